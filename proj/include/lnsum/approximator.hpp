#pragma once

#include "lnsum/mgf.hpp"
#include "lnsum/moments.hpp"
#include "lnsum/solver.hpp"

namespace lnsum {

/// The approximating lognormal for the weighted sum, plus solver diagnostics.
struct ApproxResult {
    double lognormal_mean = 0.0;
    double lognormal_variance = 0.0;
    double normal_mu = 0.0;
    double normal_sigma = 0.0;
    TPair tpair{0.0, 0.0};
    SolveOutcome solver;
};

/// Full pipeline: validate, convert to the underlying normal system,
/// check positive definiteness, factorize, build the two MGF constants,
/// solve, and convert back. Deterministic given inputs.
ApproxResult approximate(const SumSpec& spec, const TPair& tpair,
                         const SolverConfig& config = {},
                         std::int64_t max_terms = kDefaultTermBudget);

/// P(S <= s) under the approximating lognormal; 0 for s <= 0.
double approx_cdf(const ApproxResult& result, double s);

/// Inverse of approx_cdf: exp(theta * (mu_x + sigma_x * Phi^-1(p))).
/// Throws ValidationError for p outside (0,1).
double approx_quantile(const ApproxResult& result, double p);

} // namespace lnsum
