#pragma once

#include <cstdint>

#include "lnsum/moments.hpp"

namespace lnsum {

/// The two negative MGF evaluation points that generate the matching equations.
struct TPair {
    double t1;
    double t2;
};

/// Throws ValidationError unless both members are < 0. Equal members are
/// legal but produce a rank-deficient system; a warning is printed to stderr
/// and the call proceeds.
void validate(const TPair& tpair);

/// Quadrature-approximated MGF values of the sum at the two t points.
struct MgfConstants {
    double c1;
    double c2;
};

/// Gauss-Hermite approximation of the MGF of exp(theta*X), X ~ N(mu_x, sigma_x^2),
/// at t < 0: (1/sqrt(pi)) * sum_j w_j exp(t * exp(theta*(sqrt(2)*sigma_x*t_j + mu_x))).
double univariate_mgf(double t, double mu_x, double sigma_x);

struct MgfPartials {
    double d_mu;
    double d_sigma;
};

/// Analytic partial derivatives of univariate_mgf with respect to mu_x and
/// sigma_x (sigma_x the standard deviation, not the variance).
MgfPartials univariate_mgf_partials(double t, double mu_x, double sigma_x);

/// Default cap on the 12^n enumeration: 12^8 terms.
inline constexpr std::int64_t kDefaultTermBudget = 429981696;

/// The constant C = quadrature-approximated MGF of the weighted sum at t < 0,
/// enumerated over all 12^n node combinations through the decorrelating
/// Cholesky transform. Throws CapacityError when 12^n exceeds max_terms.
///
/// Parallelized over the first node index into 12 fixed partial sums, each
/// accumulated serially in index order, so the result is bit-identical for
/// any thread count.
double sum_mgf_constant(double t, const SumSpec& spec, const NormalSystem& normal,
                        std::int64_t max_terms = kDefaultTermBudget);

/// Both constants for a t pair.
MgfConstants sum_mgf_constants(const TPair& tpair, const SumSpec& spec,
                               const NormalSystem& normal,
                               std::int64_t max_terms = kDefaultTermBudget);

} // namespace lnsum
