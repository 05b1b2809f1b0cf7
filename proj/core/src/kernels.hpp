#pragma once

#include <cstddef>

namespace ltrc::detail {

// Reduction kernels for the likelihood hot loops, compiled in their own
// translation unit with -ffast-math -fopenmp-simd so the compiler can emit
// libmvec vector calls. Arguments are clamped inside the kernels so every
// intermediate stays finite; callers guarantee finite inputs.

// sum_i exp(a * log_x[i] + b), argument clamped to [-500, 500]
double ksum_exp(const double* log_x, std::size_t n, double a, double b);

// sum_i log(1 + exp(a * log_x[i] + b)), same clamping
double ksum_softplus(const double* log_x, std::size_t n, double a, double b);

// sum_i log1p(x[i] * inv_scale), product clamped to at most 1e300
double ksum_log1p_scaled(const double* x, std::size_t n, double inv_scale);

}  // namespace ltrc::detail
