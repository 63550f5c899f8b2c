#include "lnsum/approximator.hpp"

#include <cmath>

#include "lnsum/factorize.hpp"
#include "lnsum/normal.hpp"

namespace lnsum {

ApproxResult approximate(const SumSpec& spec, const TPair& tpair,
                         const SolverConfig& config, std::int64_t max_terms) {
    validate(spec);
    validate(tpair);

    NormalSystem sys = underlying_system(spec);
    factorize(sys);

    const MgfConstants constants = sum_mgf_constants(tpair, spec, sys, max_terms);
    const SolveOutcome outcome = newton_solve(tpair, constants, spec, config);

    ApproxResult result;
    result.normal_mu = outcome.mu_x;
    result.normal_sigma = outcome.sigma_x;
    const LognormalMoments m = lognormal_from_normal(outcome.mu_x, outcome.sigma_x);
    result.lognormal_mean = m.mean;
    result.lognormal_variance = m.variance;
    result.tpair = tpair;
    result.solver = outcome;
    return result;
}

double approx_cdf(const ApproxResult& result, double s) {
    if (s <= 0.0)
        return 0.0;
    return std_normal_cdf((std::log(s) / kTheta - result.normal_mu) / result.normal_sigma);
}

double approx_quantile(const ApproxResult& result, double p) {
    return std::exp(kTheta * (result.normal_mu + result.normal_sigma * std_normal_quantile(p)));
}

} // namespace lnsum
