#include "lnsum/moments.hpp"

#include <cmath>
#include <sstream>

#include "lnsum/errors.hpp"

namespace lnsum {

namespace {

constexpr double kSymmetryTol = 1e-12;

} // namespace

void validate(const SumSpec& spec) {
    const auto n = spec.means.size();
    if (n < 1)
        throw ValidationError("spec is empty: need at least one component");
    if (spec.weights.size() != n || spec.cov.rows() != n || spec.cov.cols() != n) {
        std::ostringstream os;
        os << "dimension mismatch: means " << n << ", weights " << spec.weights.size()
           << ", cov " << spec.cov.rows() << "x" << spec.cov.cols();
        throw ValidationError(os.str());
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(spec.means(i) > 0.0)) {
            std::ostringstream os;
            os << "mean " << i << " must be strictly positive, got " << spec.means(i);
            throw ValidationError(os.str());
        }
        if (!(spec.cov(i, i) > 0.0)) {
            std::ostringstream os;
            os << "variance " << i << " must be strictly positive, got " << spec.cov(i, i);
            throw ValidationError(os.str());
        }
    }
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(spec.cov(i, j) - spec.cov(j, i)) > kSymmetryTol) {
                std::ostringstream os;
                os << "covariance not symmetric at (" << i << "," << j << "): "
                   << spec.cov(i, j) << " vs " << spec.cov(j, i);
                throw ValidationError(os.str());
            }
}

double normal_mean_from_lognormal(double mu_y, double var_y) {
    if (!(mu_y > 0.0))
        throw ValidationError("lognormal mean must be strictly positive");
    return (1.0 / kTheta) * (std::log(mu_y) - 0.5 * std::log1p(var_y / (mu_y * mu_y)));
}

double normal_var_from_lognormal(double mu_yi, double mu_yj, double cov_ij) {
    const double arg = 1.0 + cov_ij / std::abs(mu_yi * mu_yj);
    if (!(arg > 0.0)) {
        std::ostringstream os;
        os << "covariance " << cov_ij << " too negative for lognormal means ("
           << mu_yi << ", " << mu_yj << "): log argument " << arg;
        throw ValidationError(os.str());
    }
    const double inv = 1.0 / kTheta;
    return inv * inv * std::log(arg);
}

LognormalMoments lognormal_from_normal(double mu_x, double sigma_x) {
    const double tv = kTheta * sigma_x * (kTheta * sigma_x);  // theta^2 sigma^2
    LognormalMoments m;
    m.mean = std::exp(kTheta * mu_x + 0.5 * tv);
    m.variance = std::exp(2.0 * kTheta * mu_x + tv) * std::expm1(tv);
    return m;
}

NormalSystem underlying_system(const SumSpec& spec) {
    validate(spec);
    const int n = spec.size();
    NormalSystem sys;
    sys.means.resize(n);
    sys.cov.resize(n, n);
    for (int i = 0; i < n; ++i)
        sys.means(i) = normal_mean_from_lognormal(spec.means(i), spec.cov(i, i));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double v;
            try {
                v = normal_var_from_lognormal(spec.means(i), spec.means(j), spec.cov(i, j));
            } catch (const ValidationError& e) {
                std::ostringstream os;
                os << "covariance entry (" << i << "," << j << "): " << e.what();
                throw ValidationError(os.str());
            }
            sys.cov(i, j) = v;
            sys.cov(j, i) = v;
        }
    return sys;
}

SumMoments sum_mean_var(const SumSpec& spec) {
    SumMoments m;
    m.mean = spec.weights.dot(spec.means);
    m.variance = spec.weights.dot(spec.cov * spec.weights);
    return m;
}

} // namespace lnsum
