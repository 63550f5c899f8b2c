#include "lnsum/tuner.hpp"

#include <cmath>
#include <optional>
#include <sstream>

#include "lnsum/errors.hpp"

namespace lnsum {

namespace {

struct Candidate {
    double score;
    int i, j;  // integer grid indices, i < j
    ApproxResult result;
};

// Total order on candidates: lower score wins, ties break toward the
// lexicographically smallest index pair.
bool better(const Candidate& a, const Candidate& b) {
    if (a.score != b.score)
        return a.score < b.score;
    if (a.i != b.i)
        return a.i < b.i;
    return a.j < b.j;
}

int checked_divisor(const TunerConfig& config) {
    if (config.upper_limit < 2)
        throw ValidationError("tuner upper_limit must be at least 2");
    if (config.precision < 1)
        throw ValidationError("tuner precision must be at least 1");
    if (config.upper_limit % config.precision != 0) {
        std::ostringstream os;
        os << "tuner upper_limit (" << config.upper_limit
           << ") must be divisible by precision (" << config.precision
           << ") so the index-to-t map is exact";
        throw ValidationError(os.str());
    }
    return config.upper_limit / config.precision;
}

std::optional<Candidate> evaluate(const SumSpec& spec, const CdfGrid& truth,
                                  const WeightFn& weight_fn, int divisor, int i, int j,
                                  const SolverConfig& solver_config) {
    const TPair tpair{-static_cast<double>(i) / divisor, -static_cast<double>(j) / divisor};
    try {
        ApproxResult r = approximate(spec, tpair, solver_config);
        const double score = objective(r, truth, weight_fn);
        return Candidate{score, i, j, std::move(r)};
    } catch (const NumericalError&) {
        return std::nullopt;
    }
}

TunerResult finish(std::optional<Candidate> best, std::int64_t evaluated,
                   std::int64_t skipped) {
    if (!best)
        throw OptimizationError("every t-set candidate failed to solve");
    TunerResult result;
    result.best_score = best->score;
    result.best_tpair = best->result.tpair;
    result.best_result = std::move(best->result);
    result.evaluated_pairs = evaluated;
    result.skipped_pairs = skipped;
    return result;
}

} // namespace

WeightFn uniform_weights() {
    return [](double) { return 1.0; };
}

WeightFn three_band_weights() {
    return [](double s) {
        if (s < 0.75)
            return 1.0;
        if (s <= 1.10)
            return 15.0;
        return 50.0;
    };
}

double objective(const ApproxResult& result, const CdfGrid& truth,
                 const WeightFn& weight_fn) {
    double score = 0.0;
    for (std::size_t k = 0; k < truth.domain.size(); ++k) {
        const double p = truth.probabilities[k];
        if (p > 0.0) {
            const double w = weight_fn ? weight_fn(truth.domain[k]) : 1.0;
            score += w * std::abs(approx_cdf(result, truth.domain[k]) - p) / p;
        }
    }
    return score;
}

TunerResult optimize_tset(const SumSpec& spec, const CdfGrid& truth,
                          const TunerConfig& config, const SolverConfig& solver_config) {
    const int divisor = checked_divisor(config);
    const int ul = config.upper_limit;

    std::optional<Candidate> best;
    std::int64_t evaluated = 0;
    std::int64_t skipped = 0;
#pragma omp parallel
    {
        std::optional<Candidate> local;
        std::int64_t local_eval = 0;
        std::int64_t local_skip = 0;
#pragma omp for schedule(dynamic)
        for (int i = 1; i < ul; ++i) {
            for (int j = i + 1; j <= ul; ++j) {
                auto cand = evaluate(spec, truth, config.weight_fn, divisor, i, j,
                                     solver_config);
                if (!cand) {
                    ++local_skip;
                    continue;
                }
                ++local_eval;
                if (!local || better(*cand, *local))
                    local = std::move(cand);
            }
        }
#pragma omp critical
        {
            evaluated += local_eval;
            skipped += local_skip;
            if (local && (!best || better(*local, *best)))
                best = std::move(local);
        }
    }
    return finish(std::move(best), evaluated, skipped);
}

TunerResult optimize_tset_serial(const SumSpec& spec, const CdfGrid& truth,
                                 const TunerConfig& config,
                                 const SolverConfig& solver_config) {
    const int divisor = checked_divisor(config);
    const int ul = config.upper_limit;

    std::optional<Candidate> best;
    std::int64_t evaluated = 0;
    std::int64_t skipped = 0;
    for (int i = 1; i < ul; ++i)
        for (int j = i + 1; j <= ul; ++j) {
            auto cand = evaluate(spec, truth, config.weight_fn, divisor, i, j,
                                 solver_config);
            if (!cand) {
                ++skipped;
                continue;
            }
            ++evaluated;
            if (!best || better(*cand, *best))
                best = std::move(cand);
        }
    return finish(std::move(best), evaluated, skipped);
}

} // namespace lnsum
