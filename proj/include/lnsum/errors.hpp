#pragma once

#include <stdexcept>
#include <string>

namespace lnsum {

/// Bad or inconsistent input (spec validation, domain violations, config limits).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a configured size budget.
class CapacityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A numerical procedure failed on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The underlying normal covariance matrix is not positive definite.
class NotPositiveDefiniteError : public ValidationError {
public:
    NotPositiveDefiniteError(const std::string& msg, double min_eigenvalue)
        : ValidationError(msg), min_eigenvalue(min_eigenvalue) {}
    double min_eigenvalue;
};

/// Cholesky pivot breakdown; `pivot` is the zero-based index of the failing pivot.
class FactorizationError : public NumericalError {
public:
    FactorizationError(const std::string& msg, int pivot)
        : NumericalError(msg), pivot(pivot) {}
    int pivot;
};

/// Newton system became singular; carries the last iterate.
class SingularJacobianError : public NumericalError {
public:
    SingularJacobianError(const std::string& msg, double mu_x, double sigma_x, int iterations)
        : NumericalError(msg), mu_x(mu_x), sigma_x(sigma_x), iterations(iterations) {}
    double mu_x;
    double sigma_x;
    int iterations;
};

/// Iteration limit reached; carries the best iterate and its residual.
class NonConvergenceError : public NumericalError {
public:
    NonConvergenceError(const std::string& msg, double mu_x, double sigma_x,
                        double residual, int iterations)
        : NumericalError(msg), mu_x(mu_x), sigma_x(sigma_x),
          residual(residual), iterations(iterations) {}
    double mu_x;
    double sigma_x;
    double residual;
    int iterations;
};

/// Every candidate in a t-set search failed to solve.
class OptimizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace lnsum
