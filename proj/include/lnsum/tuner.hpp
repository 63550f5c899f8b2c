#pragma once

#include <cstdint>
#include <functional>

#include "lnsum/approximator.hpp"
#include "lnsum/montecarlo.hpp"

namespace lnsum {

/// Per-domain-value weight for the objective.
using WeightFn = std::function<double(double)>;

/// Constant weight 1.
WeightFn uniform_weights();

/// Three-band scheme: 1 below 0.75, 15 on [0.75, 1.10], 50 above 1.10.
WeightFn three_band_weights();

struct TunerConfig {
    int upper_limit = 100;  // integer grid bound for the t indices
    int precision = 10;     // max |t|; actual t = -index / (upper_limit / precision)
    WeightFn weight_fn;     // empty means uniform
};

struct TunerResult {
    double best_score = 0.0;
    TPair best_tpair{0.0, 0.0};
    ApproxResult best_result;
    std::int64_t evaluated_pairs = 0;
    std::int64_t skipped_pairs = 0;  // pairs whose solve failed
};

/// Sum over grid points with p_k > 0 of weight(s_k) * |cdf(s_k) - p_k| / p_k.
double objective(const ApproxResult& result, const CdfGrid& truth,
                 const WeightFn& weight_fn = {});

/// Exhaustive search over unordered index pairs 1 <= t1 < t2 <= upper_limit,
/// scoring each solved candidate against the truth grid. Ties on score break
/// toward the lexicographically smallest index pair, so the result does not
/// depend on evaluation order. Throws OptimizationError when every pair fails.
TunerResult optimize_tset(const SumSpec& spec, const CdfGrid& truth,
                          const TunerConfig& config, const SolverConfig& solver_config = {});

/// Single-threaded reference; identical result to optimize_tset.
TunerResult optimize_tset_serial(const SumSpec& spec, const CdfGrid& truth,
                                 const TunerConfig& config,
                                 const SolverConfig& solver_config = {});

} // namespace lnsum
