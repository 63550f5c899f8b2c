#include "lnsum/solver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "lnsum/errors.hpp"

namespace lnsum {

std::pair<double, double> initial_point(const SumSpec& spec) {
    const SumMoments m = sum_mean_var(spec);
    if (!(m.mean > 0.0)) {
        std::ostringstream os;
        os << "E[S] must be positive to moment-match a lognormal, got " << m.mean;
        throw ValidationError(os.str());
    }
    const double mu0 = normal_mean_from_lognormal(m.mean, m.variance);
    const double sigma0 = std::sqrt(normal_var_from_lognormal(m.mean, m.mean, m.variance));
    return {mu0, sigma0};
}

std::pair<double, double> residuals(double mu_x, double sigma_x,
                                    const TPair& tpair, const MgfConstants& constants) {
    return {univariate_mgf(tpair.t1, mu_x, sigma_x) - constants.c1,
            univariate_mgf(tpair.t2, mu_x, sigma_x) - constants.c2};
}

SolveOutcome newton_solve(const TPair& tpair, const MgfConstants& constants,
                          const SumSpec& spec, const SolverConfig& config) {
    auto [mu, sigma] = initial_point(spec);
    const double taus[2] = {tpair.t1, tpair.t2};

    SolveOutcome out;
    for (;;) {
        const auto [r1, r2] = residuals(mu, sigma, tpair, constants);
        const double mval = std::max(std::abs(r1), std::abs(r2));
        if (mval < config.epsilon) {
            out.mu_x = mu;
            out.sigma_x = sigma;
            out.final_residual = mval;
            out.converged = true;
            return out;
        }
        if (out.iterations >= config.max_iterations) {
            std::ostringstream os;
            os << "Newton did not converge in " << config.max_iterations
               << " iterations; best residual " << mval;
            throw NonConvergenceError(os.str(), mu, sigma, mval, out.iterations);
        }

        Eigen::Matrix2d A;
        for (int i = 0; i < 2; ++i) {
            const MgfPartials p = univariate_mgf_partials(taus[i], mu, sigma);
            A(i, 0) = p.d_mu;
            A(i, 1) = p.d_sigma;
        }
        const double det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
        if (!(std::abs(det) >= 1e-300)) {
            std::ostringstream os;
            os << "singular Jacobian (det " << det << ") at iteration " << out.iterations;
            throw SingularJacobianError(os.str(), mu, sigma, out.iterations);
        }
        const Eigen::Vector2d b(-r1, -r2);
        const Eigen::Vector2d delta = A.colPivHouseholderQr().solve(b);
        mu += delta(0);
        sigma += delta(1);
        if (sigma < 0.0)
            sigma = -sigma;  // residuals are even in sigma
        ++out.iterations;
    }
}

} // namespace lnsum
