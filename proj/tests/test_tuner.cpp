#include <doctest.h>

#include <cmath>
#include <random>

#include "lnsum/errors.hpp"
#include "lnsum/tuner.hpp"
#include "oracles.hpp"

using namespace lnsum;
using namespace lnsum::testing;

TEST_CASE("objective against truth generated from the approximation itself") {
    // For a single lognormal the approximation is exact, so the score is
    // pure Monte-Carlo noise over the grid.
    const SumSpec spec = single_term_spec(1.0, 0.01);
    const ApproxResult r = approximate(spec, TPair{-1.0, -0.2});
    const CdfGrid truth = simulate_cdf(spec, default_grid(2.0, 100), SimConfig{10000000, 71, 0});
    const double score = objective(r, truth);
    CHECK(score < 1.0);
    CHECK(score > 0.0);
}

TEST_CASE("objective is linear in the weights and skips empty cells") {
    const SumSpec spec = portfolio_spec(0.5);
    const ApproxResult r = approximate(spec, TPair{-1.0, -0.2});
    const CdfGrid truth = simulate_cdf(spec, default_grid(3.0, 200), SimConfig{100000, 12, 0});

    const double base = objective(r, truth);
    const double doubled = objective(r, truth, [](double) { return 2.0; });
    CHECK(doubled == 2.0 * base);

    CdfGrid vacuous;
    vacuous.domain = {1.0, 2.0};
    vacuous.probabilities = {0.0, 0.0};
    CHECK(objective(r, vacuous) == 0.0);
}

TEST_CASE("small grid enumerates every pair") {
    const SumSpec spec = portfolio_spec(0.5);
    const CdfGrid truth = simulate_cdf(spec, default_grid(3.0, 100), SimConfig{100000, 2, 0});
    TunerConfig config;
    config.upper_limit = 4;
    config.precision = 4;  // divisor 1: t values -1..-4
    const TunerResult r = optimize_tset(spec, truth, config);
    CHECK(r.evaluated_pairs + r.skipped_pairs == 6);
    CHECK(r.best_score > 0.0);
    CHECK(r.best_tpair.t1 < 0.0);
    CHECK(r.best_tpair.t2 < r.best_tpair.t1 + 1e-12);
}

TEST_CASE("parallel and serial searches coincide") {
    const SumSpec spec = portfolio_spec(0.75);
    const CdfGrid truth = simulate_cdf(spec, default_grid(3.0, 300), SimConfig{200000, 99, 0});
    TunerConfig config;
    config.upper_limit = 12;
    config.precision = 3;
    const TunerResult par = optimize_tset(spec, truth, config);
    const TunerResult ser = optimize_tset_serial(spec, truth, config);
    CHECK(par.best_score == ser.best_score);
    CHECK(par.best_tpair.t1 == ser.best_tpair.t1);
    CHECK(par.best_tpair.t2 == ser.best_tpair.t2);
    CHECK(par.evaluated_pairs == ser.evaluated_pairs);
    CHECK(par.skipped_pairs == ser.skipped_pairs);
    CHECK(par.evaluated_pairs + par.skipped_pairs == 66);  // C(12,2)

    const TunerResult again = optimize_tset(spec, truth, config);
    CHECK(again.best_score == par.best_score);
    CHECK(again.best_tpair.t1 == par.best_tpair.t1);
}

TEST_CASE("score ties break toward the smallest index pair") {
    // An all-zero truth grid scores every candidate 0, so the winner must be
    // the lexicographically smallest pair regardless of scheduling.
    const SumSpec spec = portfolio_spec(0.5);
    CdfGrid zeros;
    zeros.domain = default_grid(3.0, 20);
    zeros.probabilities.assign(20, 0.0);
    TunerConfig config;
    config.upper_limit = 8;
    config.precision = 4;  // divisor 2
    const TunerResult r = optimize_tset(spec, zeros, config);
    CHECK(r.best_score == 0.0);
    CHECK(r.best_tpair.t1 == -0.5);  // index 1
    CHECK(r.best_tpair.t2 == -1.0);  // index 2
}

TEST_CASE("best score is recomputable and dominates an audit sample") {
    const SumSpec spec = portfolio_spec(0.75);
    const CdfGrid truth = simulate_cdf(spec, default_grid(3.0, 300), SimConfig{200000, 5, 0});
    TunerConfig config;
    config.upper_limit = 12;
    config.precision = 3;
    const TunerResult best = optimize_tset(spec, truth, config);

    const double recomputed = objective(best.best_result, truth);
    CHECK(std::abs(recomputed - best.best_score) < 1e-12);

    std::mt19937_64 eng(1);
    std::uniform_int_distribution<int> pick(1, 12);
    const int divisor = 12 / 3;
    int audited = 0;
    while (audited < 20) {
        const int i = pick(eng), j = pick(eng);
        if (i >= j)
            continue;
        ++audited;
        const ApproxResult r = approximate(
            spec, TPair{-static_cast<double>(i) / divisor, -static_cast<double>(j) / divisor});
        CHECK(best.best_score <= objective(r, truth) + 1e-15);
    }
}

TEST_CASE("weighted optimum dominates under its own objective") {
    const SumSpec spec = portfolio_spec(0.75);
    const CdfGrid truth = simulate_cdf(spec, default_grid(3.0, 300), SimConfig{200000, 13, 0});
    TunerConfig unweighted;
    unweighted.upper_limit = 10;
    unweighted.precision = 2;
    TunerConfig weighted = unweighted;
    weighted.weight_fn = three_band_weights();

    const TunerResult u = optimize_tset(spec, truth, unweighted);
    const TunerResult w = optimize_tset(spec, truth, weighted);
    const double w_at_u = objective(u.best_result, truth, three_band_weights());
    CHECK(w.best_score <= w_at_u + 1e-15);
}

TEST_CASE("configuration validation") {
    const SumSpec spec = portfolio_spec(0.5);
    CdfGrid truth;
    truth.domain = {1.0};
    truth.probabilities = {0.5};

    TunerConfig bad;
    bad.upper_limit = 1;
    CHECK_THROWS_AS(optimize_tset(spec, truth, bad), ValidationError);
    bad.upper_limit = 10;
    bad.precision = 0;
    CHECK_THROWS_AS(optimize_tset(spec, truth, bad), ValidationError);
    bad.precision = 3;  // 10 % 3 != 0
    CHECK_THROWS_WITH_AS(optimize_tset(spec, truth, bad), doctest::Contains("divisible"),
                         ValidationError);
}

TEST_CASE("all candidates failing raises an optimization error") {
    const SumSpec spec = portfolio_spec(0.5);
    CdfGrid truth;
    truth.domain = {1.0};
    truth.probabilities = {0.5};
    TunerConfig config;
    config.upper_limit = 4;
    config.precision = 4;
    SolverConfig solver;
    solver.epsilon = 1e-16;  // unreachable: every Newton solve hits the cap
    solver.max_iterations = 1;
    CHECK_THROWS_AS(optimize_tset(spec, truth, config, solver), OptimizationError);
}

TEST_CASE("weight presets") {
    const WeightFn bands = three_band_weights();
    CHECK(bands(0.5) == 1.0);
    CHECK(bands(0.75) == 15.0);
    CHECK(bands(1.0) == 15.0);
    CHECK(bands(1.10) == 15.0);
    CHECK(bands(1.2) == 50.0);
    CHECK(uniform_weights()(123.0) == 1.0);
}
