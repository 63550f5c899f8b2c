#include "lnsum/mgf.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <vector>

#include "lnsum/errors.hpp"
#include "lnsum/quadrature.hpp"

namespace lnsum {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kSqrt2 = 1.4142135623730951;

using quadrature::kNodes;
using quadrature::kOrder;
using quadrature::kWeights;

struct EnumContext {
    int n;
    double t;
    const Eigen::MatrixXd& chol;
    const Eigen::VectorXd& mu;
    const Eigen::VectorXd& weights;
    std::vector<int> digit;  // node index chosen per dimension
};

// Kernel contribution of dimension `depth` under the current digit choices:
// a_d * exp(theta * (sqrt(2) * (L r)_d + mu_d)), with (L r)_d built from the
// digits of dimensions 0..depth.
double kernel_term(const EnumContext& c, int depth) {
    double z = 0.0;
    for (int j = 0; j <= depth; ++j)
        z += c.chol(depth, j) * kNodes[c.digit[j]];
    return c.weights(depth) * std::exp(kTheta * (kSqrt2 * z + c.mu(depth)));
}

// Depth-first sum over dimensions depth..n-1. wprod and expsum carry the
// weight product and kernel sum of the already-fixed dimensions.
double enumerate_from(EnumContext& c, int depth, double wprod, double expsum) {
    double acc = 0.0;
    for (int k = 0; k < kOrder; ++k) {
        c.digit[depth] = k;
        const double w = wprod * kWeights[k];
        const double s = expsum + kernel_term(c, depth);
        if (depth + 1 == c.n)
            acc += w * std::exp(c.t * s);
        else
            acc += enumerate_from(c, depth + 1, w, s);
    }
    return acc;
}

std::int64_t term_count(int n, std::int64_t max_terms) {
    std::int64_t terms = 1;
    for (int i = 0; i < n; ++i) {
        if (terms > max_terms / kOrder) {
            std::ostringstream os;
            os << "12^" << n << " quadrature terms exceed the budget of "
               << max_terms << "; reduce the number of sum components";
            throw CapacityError(os.str());
        }
        terms *= kOrder;
    }
    return terms;
}

} // namespace

void validate(const TPair& tpair) {
    if (!(tpair.t1 < 0.0) || !(tpair.t2 < 0.0)) {
        std::ostringstream os;
        os << "t values must be negative, got {" << tpair.t1 << ", " << tpair.t2 << "}";
        throw ValidationError(os.str());
    }
    if (tpair.t1 == tpair.t2)
        std::cerr << "warning: the t-values are equal (" << tpair.t1
                  << "); one equation will be used to solve for 2 unknowns\n";
}

double univariate_mgf(double t, double mu_x, double sigma_x) {
    double s = 0.0;
    for (int j = 0; j < kOrder; ++j)
        s += kWeights[j] * std::exp(t * std::exp(kTheta * (kSqrt2 * sigma_x * kNodes[j] + mu_x)));
    return s / kSqrtPi;
}

MgfPartials univariate_mgf_partials(double t, double mu_x, double sigma_x) {
    double s_mu = 0.0;
    double s_sigma = 0.0;
    for (int j = 0; j < kOrder; ++j) {
        const double e = std::exp(kTheta * (kSqrt2 * sigma_x * kNodes[j] + mu_x));
        const double b = kWeights[j] * std::exp(t * e) * e;
        s_mu += b;
        s_sigma += kNodes[j] * b;
    }
    return {kTheta * t / kSqrtPi * s_mu, kTheta * t * kSqrt2 / kSqrtPi * s_sigma};
}

double sum_mgf_constant(double t, const SumSpec& spec, const NormalSystem& normal,
                        std::int64_t max_terms) {
    const int n = spec.size();
    if (!normal.factorized())
        throw ValidationError("normal system has no Cholesky factor; run factorize() first");
    term_count(n, max_terms);

    // One partial sum per outermost node index; each subtree is accumulated
    // serially in index order, so the total does not depend on thread count.
    double partial[kOrder] = {};
#pragma omp parallel for schedule(dynamic) if (n >= 3)
    for (int k0 = 0; k0 < kOrder; ++k0) {
        EnumContext ctx{n, t, normal.chol, normal.means, spec.weights,
                        std::vector<int>(static_cast<std::size_t>(n), 0)};
        ctx.digit[0] = k0;
        const double e0 = kernel_term(ctx, 0);
        if (n == 1)
            partial[k0] = kWeights[k0] * std::exp(t * e0);
        else
            partial[k0] = enumerate_from(ctx, 1, kWeights[k0], e0);
    }
    double total = 0.0;
    for (int k0 = 0; k0 < kOrder; ++k0)
        total += partial[k0];
    return total / std::pow(kSqrtPi, n);
}

MgfConstants sum_mgf_constants(const TPair& tpair, const SumSpec& spec,
                               const NormalSystem& normal, std::int64_t max_terms) {
    validate(tpair);
    MgfConstants c;
    c.c1 = sum_mgf_constant(tpair.t1, spec, normal, max_terms);
    c.c2 = sum_mgf_constant(tpair.t2, spec, normal, max_terms);
    for (double v : {c.c1, c.c2})
        if (!(v > 0.0 && v <= 1.0 + 1e-9)) {
            std::ostringstream os;
            os << "MGF constant " << v << " outside (0, 1]; the sum is not a "
                  "positive random variable at these inputs";
            throw NumericalError(os.str());
        }
    return c;
}

} // namespace lnsum
