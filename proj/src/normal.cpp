#include "lnsum/normal.hpp"

#include <cmath>
#include <sstream>

#include "lnsum/errors.hpp"

namespace lnsum {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

// Rational approximation of the normal quantile in terms of
// t = sqrt(-2 ln p_tail), |error| < 4.5e-4; used only as a Newton seed.
double quantile_seed(double p) {
    const double tail = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(tail));
    const double num = 2.515517 + t * (0.802853 + t * 0.010328);
    const double den = 1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308));
    const double q = t - num / den;
    return p < 0.5 ? -q : q;
}

} // namespace

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / kSqrt2);
}

double std_normal_pdf(double x) {
    return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "quantile probability must lie in (0,1), got " << p;
        throw ValidationError(os.str());
    }
    double q = quantile_seed(p);
    for (int i = 0; i < 4; ++i) {
        const double err = std_normal_cdf(q) - p;
        const double d = std_normal_pdf(q);
        if (d <= 0.0)
            break;
        const double step = err / d;
        q -= step;
        if (std::abs(step) < 1e-15 * (1.0 + std::abs(q)))
            break;
    }
    return q;
}

} // namespace lnsum
