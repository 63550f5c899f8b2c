#pragma once

#include <utility>

#include "lnsum/mgf.hpp"
#include "lnsum/moments.hpp"

namespace lnsum {

struct SolverConfig {
    double epsilon = 1e-10;    // convergence threshold on max |residual|
    int max_iterations = 200;
};

struct SolveOutcome {
    double mu_x = 0.0;
    double sigma_x = 0.0;
    int iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
};

/// Moment-matched starting point: the underlying normal parameters of the
/// lognormal whose mean and variance equal E[S] and V[S]. Throws
/// ValidationError when E[S] <= 0.
std::pair<double, double> initial_point(const SumSpec& spec);

/// r_i = univariate_mgf(tau_i, mu_x, sigma_x) - C_i.
std::pair<double, double> residuals(double mu_x, double sigma_x,
                                    const TPair& tpair, const MgfConstants& constants);

/// Newton's method on the two MGF-matching equations with the analytic 2x2
/// Jacobian, starting from the moment-matched point. Negative sigma iterates
/// are reflected (the residuals are even in sigma). Throws
/// SingularJacobianError or NonConvergenceError.
SolveOutcome newton_solve(const TPair& tpair, const MgfConstants& constants,
                          const SumSpec& spec, const SolverConfig& config = {});

} // namespace lnsum
