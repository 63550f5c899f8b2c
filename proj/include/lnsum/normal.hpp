#pragma once

namespace lnsum {

/// Standard normal CDF, via erfc.
double std_normal_cdf(double x);

/// Standard normal PDF.
double std_normal_pdf(double x);

/// Inverse standard normal CDF for p in (0,1), accurate to ~1e-15
/// (rational starting guess polished by Newton steps on the exact CDF).
/// Throws ValidationError for p outside (0,1).
double std_normal_quantile(double p);

} // namespace lnsum
