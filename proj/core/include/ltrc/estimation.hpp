#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>

#include "ltrc/families.hpp"
#include "ltrc/types.hpp"

namespace ltrc {

// Symmetric 2x2 matrix (observed information, covariance).
struct SymMat2 {
    double m11 = 0.0;
    double m12 = 0.0;
    double m22 = 0.0;

    double trace() const { return m11 + m22; }
    double det() const { return m11 * m22 - m12 * m12; }
    // Eigenvalues in ascending order.
    std::array<double, 2> eigenvalues() const;
};

struct FitResult {
    Family family = Family::fisk;
    Params params_hat;
    double loglik_max = 0.0;
    SymMat2 observed_info;                 // entries NaN if any FD eval failed
    std::optional<SymMat2> covariance;     // nullopt when info is not SPD
    bool converged = false;                // true if any restart met the stop rule
    int n_restarts_used = 0;
};

// Central finite-difference Hessian of fn at z with per-coordinate steps h.
// Non-finite evaluations propagate as NaN entries.
SymMat2 hessian_fd(const std::function<double(const std::array<double, 2>&)>& fn,
                   const std::array<double, 2>& z, const std::array<double, 2>& h);

// Observed information: FD Hessian of the negative log-likelihood at
// params_hat in natural coordinates, with fixed steps
// h_j = max(1e-4 |param_j|, 1e-6).
SymMat2 observed_info(Family f, const Params& params_hat, const LtrcSample& sample);

// Inverse of the observed information when it is numerically SPD (both
// eigenvalues above 1e-10 times the trace); nullopt otherwise, which
// downstream reports surface as NA.
std::optional<SymMat2> covariance_of(const SymMat2& info);

// Maximum-likelihood fit of one family to an LTRC sample. Nelder-Mead on
// the unconstrained scale (log shape / log scale; mu kept raw), multistart:
// one percentile-matching initial point plus four seeded jitters of it. The
// best restart by (loglik, then restart order) wins. Requires at least 3
// uncensored losses (insufficient_data_error otherwise).
FitResult fit_mle(Family f, const LtrcSample& sample, std::uint64_t seed);

namespace detail {
// Same as fit_mle but with an explicit restart count (fit_mle uses 5).
// Exposed so tests can check that extra restarts never hurt.
FitResult fit_mle_restarts(Family f, const LtrcSample& sample, std::uint64_t seed,
                           int n_restarts);

// Coordinate transform between natural params and the unconstrained scale.
std::array<double, 2> to_unconstrained(Family f, const Params& p);
Params from_unconstrained(Family f, const std::array<double, 2>& z);
}  // namespace detail

}  // namespace ltrc
