#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace lnsum {

/// Scaling constant theta = ln(10)/10 of the base-10 lognormal convention
/// Y = 10^(X/10) = exp(theta * X).
inline const double kTheta = std::log(10.0) / 10.0;

/// A weighted sum of correlated lognormal variables, parameterized by the
/// lognormal means, their covariance matrix, and the sum weights.
struct SumSpec {
    Eigen::VectorXd means;    // lognormal means, all > 0
    Eigen::MatrixXd cov;      // lognormal covariance, variances on the diagonal
    Eigen::VectorXd weights;  // sum coefficients a_i

    int size() const { return static_cast<int>(means.size()); }
};

/// Throws ValidationError on dimension mismatch, asymmetric covariance
/// (tolerance 1e-12 absolute), non-positive means or diagonal entries.
void validate(const SumSpec& spec);

/// The normal variables underlying a SumSpec. `chol` is empty until
/// factorize() fills it with the lower Cholesky factor of `cov`.
struct NormalSystem {
    Eigen::VectorXd means;
    Eigen::MatrixXd cov;
    Eigen::MatrixXd chol;

    bool factorized() const { return chol.size() > 0; }
};

/// Mean of the normal X such that exp(theta*X) has moments (mu_y, var_y).
/// mu_y must be > 0.
double normal_mean_from_lognormal(double mu_y, double var_y);

/// Covariance of the underlying normals: (1/theta)^2 * ln(1 + cov_ij/|mu_i mu_j|).
/// With i == j this is the underlying normal variance. Throws ValidationError
/// when the log argument is not positive (covariance too negative).
double normal_var_from_lognormal(double mu_yi, double mu_yj, double cov_ij);

struct LognormalMoments {
    double mean;
    double variance;
};

/// Moments of exp(theta*X) for X ~ N(mu_x, sigma_x^2).
LognormalMoments lognormal_from_normal(double mu_x, double sigma_x);

/// Elementwise conversion of the whole spec; chol left empty.
NormalSystem underlying_system(const SumSpec& spec);

struct SumMoments {
    double mean;      // E[S] = a' mu
    double variance;  // V[S] = a' Sigma a
};

SumMoments sum_mean_var(const SumSpec& spec);

} // namespace lnsum
