#pragma once

namespace ltrc {

// Standard normal density.
double norm_pdf(double x);

// Standard normal cdf, computed through erfc so the lower tail keeps full
// relative precision.
double norm_cdf(double x);

// log(1 - norm_cdf(x)). Uses erfc up to the underflow threshold and the
// continued-fraction tail expansion beyond it, so very deep tails return a
// finite value instead of -inf.
double norm_log_sf(double x);

// Inverse standard normal cdf on (0, 1). Rational initial estimate refined
// by one Halley step; absolute error below 1e-12 across the domain. Throws
// std::domain_error outside (0, 1).
double norm_quantile(double p);

}  // namespace ltrc
