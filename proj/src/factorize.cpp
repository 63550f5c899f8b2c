#include "lnsum/factorize.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "lnsum/errors.hpp"

namespace lnsum {

double check_positive_definite(const Eigen::MatrixXd& cov) {
    const auto n = cov.rows();
    if (cov.cols() != n)
        throw ValidationError("covariance matrix is not square");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(cov(i, j) - cov(j, i)) > 1e-12) {
                std::ostringstream os;
                os << "covariance not symmetric at (" << i << "," << j << ")";
                throw ValidationError(os.str());
            }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& cov) {
    const int n = static_cast<int>(cov.rows());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        double d = cov(j, j);
        for (int k = 0; k < j; ++k)
            d -= L(j, k) * L(j, k);
        if (!(d > 0.0)) {
            std::ostringstream os;
            os << "Cholesky pivot " << j << " is not positive (" << d << ")";
            throw FactorizationError(os.str(), j);
        }
        L(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            double s = cov(i, j);
            for (int k = 0; k < j; ++k)
                s -= L(i, k) * L(j, k);
            L(i, j) = s / L(j, j);
        }
    }
    return L;
}

void factorize(NormalSystem& sys) {
    const double min_eig = check_positive_definite(sys.cov);
    if (!(min_eig > 0.0)) {
        std::ostringstream os;
        os << "normal covariance matrix is not positive definite (min eigenvalue "
           << min_eig << ")";
        throw NotPositiveDefiniteError(os.str(), min_eig);
    }
    sys.chol = cholesky_lower(sys.cov);
}

} // namespace lnsum
