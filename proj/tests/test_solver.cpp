#include <doctest.h>

#include <cmath>
#include <random>

#include "lnsum/errors.hpp"
#include "lnsum/factorize.hpp"
#include "lnsum/solver.hpp"
#include "oracles.hpp"

using namespace lnsum;
using namespace lnsum::testing;

namespace {

MgfConstants constants_for(const SumSpec& spec, const TPair& tpair) {
    NormalSystem sys = underlying_system(spec);
    factorize(sys);
    return sum_mgf_constants(tpair, spec, sys);
}

} // namespace

TEST_CASE("initial point round-trips the sum moments") {
    const SumSpec spec = portfolio_spec(0.25);
    const auto [e_s, v_s] = sum_mean_var(spec);
    // assembled by hand from the spec inputs
    CHECK(e_s == doctest::Approx(0.25 * 1.0837 + 0.75 * 1.0214).epsilon(1e-14));
    CHECK(v_s == doctest::Approx(0.0625 * 0.04635409 + 0.5625 * 0.00680625 +
                                 2.0 * 0.25 * 0.75 * 0.00078)
                     .epsilon(1e-14));
    const auto [mu0, sigma0] = initial_point(spec);
    const auto back = lognormal_from_normal(mu0, sigma0);
    CHECK(std::abs(back.mean - e_s) / e_s < 1e-10);
    CHECK(std::abs(back.variance - v_s) / v_s < 1e-10);
}

TEST_CASE("initial point degenerates cleanly at zero variance") {
    // The V = 0 limit of the starting-point formulas themselves.
    const double e_s = 2.5;
    CHECK(normal_var_from_lognormal(e_s, e_s, 0.0) == 0.0);
    CHECK(normal_mean_from_lognormal(e_s, 0.0) ==
          doctest::Approx(std::log(e_s) / kTheta).epsilon(1e-15));
}

TEST_CASE("initial point of a single-term spec is its underlying parameters") {
    const SumSpec spec = single_term_spec(1.9, 2.4);
    const NormalSystem sys = underlying_system(spec);
    const auto [mu0, sigma0] = initial_point(spec);
    CHECK(std::abs(mu0 - sys.means(0)) < 1e-12);
    CHECK(std::abs(sigma0 - std::sqrt(sys.cov(0, 0))) < 1e-12);
}

TEST_CASE("initial point rejects non-positive sum mean") {
    SumSpec spec = two_term_example_spec();
    spec.weights.setZero();
    CHECK_THROWS_AS(initial_point(spec), ValidationError);
}

TEST_CASE("residuals vanish for self-consistent constants") {
    const SumSpec spec = single_term_spec(1.3, 0.8);
    const TPair tpair{-1.0, -0.2};
    const MgfConstants c = constants_for(spec, tpair);
    const NormalSystem sys = underlying_system(spec);
    const auto [r1, r2] =
        residuals(sys.means(0), std::sqrt(sys.cov(0, 0)), tpair, c);
    CHECK(std::abs(r1) < 1e-12);
    CHECK(std::abs(r2) < 1e-12);
}

TEST_CASE("near-zero t residuals are tiny at the starting point") {
    const SumSpec spec = portfolio_spec(0.25);
    const TPair tpair{-1e-3, -5e-3};
    const MgfConstants c = constants_for(spec, tpair);
    const auto [mu0, sigma0] = initial_point(spec);
    const auto [r1, r2] = residuals(mu0, sigma0, tpair, c);
    CHECK(std::abs(r1) < 1e-5);
    CHECK(std::abs(r2) < 1e-5);
}

TEST_CASE("huge sigma stays finite") {
    const SumSpec spec = portfolio_spec(0.5);
    const TPair tpair{-1.0, -0.2};
    const MgfConstants c = constants_for(spec, tpair);
    const auto [r1, r2] = residuals(0.0, 50.0, tpair, c);
    CHECK(std::isfinite(r1));
    CHECK(std::isfinite(r2));
    // half the weight mass survives (negative nodes), the rest decays to zero
    CHECK(r1 == doctest::Approx(0.5 - c.c1).epsilon(1e-2));
}

TEST_CASE("Newton recovers a single-term spec") {
    std::mt19937_64 eng(13);
    std::uniform_real_distribution<double> mean_dist(0.5, 3.0);
    std::uniform_real_distribution<double> var_dist(0.2, 4.0);
    for (int rep = 0; rep < 5; ++rep) {
        const SumSpec spec = single_term_spec(mean_dist(eng), var_dist(eng));
        const NormalSystem sys = underlying_system(spec);
        const TPair tpair{-1.0, -0.2};
        const SolveOutcome out = newton_solve(tpair, constants_for(spec, tpair), spec);
        CHECK(out.converged);
        CHECK(std::abs(out.mu_x - sys.means(0)) /
                  std::max(1.0, std::abs(sys.means(0))) < 1e-8);
        CHECK(std::abs(out.sigma_x - std::sqrt(sys.cov(0, 0))) /
                  std::sqrt(sys.cov(0, 0)) < 1e-8);
    }
}

TEST_CASE("converges rapidly on the reference problems") {
    for (const SumSpec& spec : {portfolio_spec(0.25), two_term_example_spec()}) {
        const TPair tpair{-1.0, -0.2};
        const MgfConstants c = constants_for(spec, tpair);
        const SolveOutcome out = newton_solve(tpair, c, spec);
        CHECK(out.converged);
        CHECK(out.iterations <= 25);
        CHECK(out.sigma_x > 0.0);
        // re-verify the matching equations independently of the solve loop
        CHECK(std::abs(univariate_mgf(tpair.t1, out.mu_x, out.sigma_x) - c.c1) < 1e-10);
        CHECK(std::abs(univariate_mgf(tpair.t2, out.mu_x, out.sigma_x) - c.c2) < 1e-10);
        CHECK(out.final_residual < 1e-10);
    }
}

TEST_CASE("Jacobian matches finite differences of the residuals") {
    const SumSpec spec = portfolio_spec(0.25);
    const TPair tpair{-1.0, -0.2};
    const MgfConstants c = constants_for(spec, tpair);
    const auto [mu0, sigma0] = initial_point(spec);
    const double h = 1e-6;
    for (double t : {tpair.t1, tpair.t2}) {
        const MgfPartials p = univariate_mgf_partials(t, mu0, sigma0);
        const double fd_mu =
            (univariate_mgf(t, mu0 + h, sigma0) - univariate_mgf(t, mu0 - h, sigma0)) / (2 * h);
        const double fd_sigma =
            (univariate_mgf(t, mu0, sigma0 + h) - univariate_mgf(t, mu0, sigma0 - h)) / (2 * h);
        CHECK(std::abs(p.d_mu - fd_mu) / std::abs(fd_mu) < 1e-6);
        CHECK(std::abs(p.d_sigma - fd_sigma) / std::abs(fd_sigma) < 1e-6);
    }
}

TEST_CASE("equal t values make the system singular") {
    const SumSpec spec = two_term_example_spec();
    const TPair tpair{-1.0, -1.0};
    const MgfConstants c = constants_for(spec, tpair);
    CHECK_THROWS_AS(newton_solve(tpair, c, spec), NumericalError);
}

TEST_CASE("iteration cap raises with the best iterate attached") {
    const SumSpec spec = portfolio_spec(0.5);
    const TPair tpair{-1.0, -0.2};
    const MgfConstants c = constants_for(spec, tpair);
    SolverConfig config;
    config.epsilon = 1e-16;  // unreachable
    config.max_iterations = 1;
    try {
        newton_solve(tpair, c, spec, config);
        FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
        CHECK(e.iterations == 1);
        CHECK(e.residual > 0.0);
        CHECK(std::isfinite(e.mu_x));
        CHECK(std::isfinite(e.sigma_x));
    }
}

TEST_CASE("solver config defaults") {
    const SolverConfig config;
    CHECK(config.epsilon == 1e-10);
    CHECK(config.max_iterations == 200);
}
