#include "kernels.hpp"

#include <cmath>

// This file is compiled with -ffast-math. Keep it free of NaN/inf logic:
// the clamps below are what make that flag safe here.

namespace ltrc::detail {

double ksum_exp(const double* log_x, std::size_t n, double a, double b) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) {
        double z = a * log_x[i] + b;
        z = z < -500.0 ? -500.0 : (z > 500.0 ? 500.0 : z);
        s += std::exp(z);
    }
    return s;
}

double ksum_softplus(const double* log_x, std::size_t n, double a, double b) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) {
        double z = a * log_x[i] + b;
        z = z < -500.0 ? -500.0 : (z > 500.0 ? 500.0 : z);
        // For z > 36 the softplus equals z to double precision; feeding 0
        // to exp in that lane keeps the intermediate small.
        double e = std::exp(z > 36.0 ? 0.0 : z);
        s += z > 36.0 ? z : std::log1p(e);
    }
    return s;
}

double ksum_log1p_scaled(const double* x, std::size_t n, double inv_scale) {
    double s = 0.0;
#pragma omp simd reduction(+ : s)
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i] * inv_scale;
        v = v > 1e300 ? 1e300 : v;
        s += std::log1p(v);
    }
    return s;
}

}  // namespace ltrc::detail
