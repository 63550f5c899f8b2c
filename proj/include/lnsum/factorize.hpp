#pragma once

#include <Eigen/Dense>

#include "lnsum/moments.hpp"

namespace lnsum {

/// Smallest eigenvalue of a symmetric matrix. Throws ValidationError when the
/// input is asymmetric beyond 1e-12 absolute. The caller decides what a
/// non-positive result means.
double check_positive_definite(const Eigen::MatrixXd& cov);

/// Lower Cholesky factor L with L*L' = cov and positive diagonal. Throws
/// FactorizationError naming the failing pivot when the matrix is numerically
/// not positive definite.
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& cov);

/// Eigenvalue check followed by Cholesky, filling sys.chol. Throws
/// NotPositiveDefiniteError when the smallest eigenvalue is <= 0.
void factorize(NormalSystem& sys);

} // namespace lnsum
