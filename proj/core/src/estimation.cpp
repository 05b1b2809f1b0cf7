#include "ltrc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltrc/calibration.hpp"
#include "ltrc/errors.hpp"
#include "ltrc/rng.hpp"

namespace ltrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SimplexResult {
    std::array<double, 2> z;
    double fval = kInf;
    bool converged = false;
};

// Nelder-Mead in two dimensions with the standard coefficients
// (reflection 1, expansion 2, contraction 0.5, shrink 0.5). Minimises fn,
// stopping when the vertex-value spread drops below 1e-10 or after
// max_iter iterations.
SimplexResult nelder_mead(const std::function<double(const std::array<double, 2>&)>& fn,
                          const std::array<double, 2>& z0, double radius, int max_iter) {
    std::array<std::array<double, 2>, 3> v = {z0, z0, z0};
    v[1][0] += radius;
    v[2][1] += radius;
    std::array<double, 3> f = {fn(v[0]), fn(v[1]), fn(v[2])};

    auto order = [&] {
        // Insertion order on three elements keeps ties deterministic.
        if (f[1] < f[0]) { std::swap(f[0], f[1]); std::swap(v[0], v[1]); }
        if (f[2] < f[1]) { std::swap(f[1], f[2]); std::swap(v[1], v[2]); }
        if (f[1] < f[0]) { std::swap(f[0], f[1]); std::swap(v[0], v[1]); }
    };

    bool converged = false;
    order();
    for (int iter = 0; iter < max_iter; ++iter) {
        if (f[2] - f[0] < 1e-10) {
            converged = true;
            break;
        }
        std::array<double, 2> c = {0.5 * (v[0][0] + v[1][0]), 0.5 * (v[0][1] + v[1][1])};
        std::array<double, 2> xr = {c[0] + (c[0] - v[2][0]), c[1] + (c[1] - v[2][1])};
        double fr = fn(xr);
        if (fr < f[0]) {
            std::array<double, 2> xe = {c[0] + 2.0 * (c[0] - v[2][0]),
                                        c[1] + 2.0 * (c[1] - v[2][1])};
            double fe = fn(xe);
            if (fe < fr) {
                v[2] = xe;
                f[2] = fe;
            } else {
                v[2] = xr;
                f[2] = fr;
            }
        } else if (fr < f[1]) {
            v[2] = xr;
            f[2] = fr;
        } else {
            bool outside = fr < f[2];
            std::array<double, 2> xc =
                outside ? std::array<double, 2>{c[0] + 0.5 * (c[0] - v[2][0]),
                                                c[1] + 0.5 * (c[1] - v[2][1])}
                        : std::array<double, 2>{c[0] - 0.5 * (c[0] - v[2][0]),
                                                c[1] - 0.5 * (c[1] - v[2][1])};
            double fc = fn(xc);
            if ((outside && fc <= fr) || (!outside && fc < f[2])) {
                v[2] = xc;
                f[2] = fc;
            } else {
                for (int i = 1; i < 3; ++i) {
                    v[i] = {v[0][0] + 0.5 * (v[i][0] - v[0][0]),
                            v[0][1] + 0.5 * (v[i][1] - v[0][1])};
                    f[i] = fn(v[i]);
                }
            }
        }
        order();
    }
    return {v[0], f[0], converged};
}

// Empirical quantile (lower order statistic) of the observed losses with the
// censored block sitting at u.
double observed_quantile(const PreparedSample& prep, double p) {
    std::size_t n = prep.n();
    auto idx = static_cast<std::size_t>(
        std::max(0.0, std::ceil(p * static_cast<double>(n)) - 1.0));
    idx = std::min(idx, n - 1);
    return idx < prep.n_unc ? prep.x[idx] : prep.u;
}

// Percentile-matching start: match the 25th/75th observed percentiles, then
// remap the levels through the window (truncation means the observed 25th
// percentile sits at conditional level 0.25, i.e. ground-up level
// F(d) + 0.25 (1 - F(d))) and match again.
Params initial_params(Family f, const PreparedSample& prep) {
    double q25 = observed_quantile(prep, 0.25);
    double q75 = observed_quantile(prep, 0.75);
    if (q75 >= prep.u && prep.n_unc >= 3) {
        // Heavy censoring pushed the raw quantiles into the censored block;
        // use quantiles of the uncensored losses instead.
        q25 = prep.x[(prep.n_unc - 1) / 4];
        q75 = prep.x[(3 * (prep.n_unc - 1)) / 4];
    }
    double med = observed_quantile(prep, 0.5);
    if (med >= prep.u) med = prep.x[(prep.n_unc - 1) / 2];
    Params fallback = f == Family::lognormal ? Params{std::log(med), 1.0} : Params{1.0, med};
    if (!(q25 > 0.0 && q25 < q75)) return fallback;

    Params prm;
    try {
        prm = percentile_match(f, q25, 0.25, q75, 0.75);
    } catch (const std::exception&) {
        return fallback;
    }
    if (prep.d <= 0.0) return prm;
    double p_d = cdf(f, prm, prep.d);
    if (!(p_d < 0.95)) return prm;
    try {
        return percentile_match(f, q25, p_d + 0.25 * (1.0 - p_d), q75,
                                p_d + 0.75 * (1.0 - p_d));
    } catch (const std::exception&) {
        return prm;
    }
}

SymMat2 observed_info_prepared(Family f, const Params& params_hat,
                               const PreparedSample& prep) {
    auto neg_ll = [&](const std::array<double, 2>& p) {
        Params prm{p[0], p[1]};
        if (!params_valid(f, prm)) return std::numeric_limits<double>::quiet_NaN();
        return -loglik(f, prm, prep);
    };
    std::array<double, 2> at = {params_hat.p1, params_hat.p2};
    std::array<double, 2> h = {std::max(1e-4 * std::abs(at[0]), 1e-6),
                               std::max(1e-4 * std::abs(at[1]), 1e-6)};
    return hessian_fd(neg_ll, at, h);
}

}  // namespace

std::array<double, 2> SymMat2::eigenvalues() const {
    double mean = 0.5 * (m11 + m22);
    double disc = std::sqrt(0.25 * (m11 - m22) * (m11 - m22) + m12 * m12);
    return {mean - disc, mean + disc};
}

SymMat2 hessian_fd(const std::function<double(const std::array<double, 2>&)>& fn,
                   const std::array<double, 2>& z, const std::array<double, 2>& h) {
    auto at = [&](double d1, double d2) { return fn({z[0] + d1, z[1] + d2}); };
    double f0 = at(0.0, 0.0);
    SymMat2 m;
    m.m11 = (at(h[0], 0.0) - 2.0 * f0 + at(-h[0], 0.0)) / (h[0] * h[0]);
    m.m22 = (at(0.0, h[1]) - 2.0 * f0 + at(0.0, -h[1])) / (h[1] * h[1]);
    m.m12 = (at(h[0], h[1]) - at(h[0], -h[1]) - at(-h[0], h[1]) + at(-h[0], -h[1])) /
            (4.0 * h[0] * h[1]);
    return m;
}

SymMat2 observed_info(Family f, const Params& params_hat, const LtrcSample& sample) {
    require_valid_params(f, params_hat);
    return observed_info_prepared(f, params_hat, PreparedSample(sample));
}

std::optional<SymMat2> covariance_of(const SymMat2& info) {
    if (!std::isfinite(info.m11) || !std::isfinite(info.m12) || !std::isfinite(info.m22)) {
        return std::nullopt;
    }
    auto eig = info.eigenvalues();
    if (!(eig[0] > 1e-10 * info.trace())) return std::nullopt;
    double det = info.det();
    if (!(det > 0.0)) return std::nullopt;
    return SymMat2{info.m22 / det, -info.m12 / det, info.m11 / det};
}

namespace detail {

std::array<double, 2> to_unconstrained(Family f, const Params& p) {
    return {f == Family::lognormal ? p.p1 : std::log(p.p1), std::log(p.p2)};
}

Params from_unconstrained(Family f, const std::array<double, 2>& z) {
    return {f == Family::lognormal ? z[0] : std::exp(z[0]), std::exp(z[1])};
}

FitResult fit_mle_restarts(Family f, const LtrcSample& sample, std::uint64_t seed,
                           int n_restarts) {
    if (sample.n_uncensored() < 3) {
        throw insufficient_data_error("fit_mle needs at least 3 uncensored losses");
    }
    PreparedSample prep(sample);

    auto objective = [&](const std::array<double, 2>& z) {
        if (std::abs(z[0]) > 700.0 || std::abs(z[1]) > 700.0) return kInf;
        return -loglik(f, from_unconstrained(f, z), prep);
    };

    std::array<double, 2> z_init = to_unconstrained(f, initial_params(f, prep));
    UniformOpen01 jitter(derive_seed(seed));

    SimplexResult best;
    bool any_converged = false;
    for (int r = 0; r < n_restarts; ++r) {
        std::array<double, 2> start = z_init;
        if (r > 0) {
            // Log-uniform perturbation: each parameter scaled by a factor
            // in (1/e, e) (the location parameter shifted by up to 1).
            start[0] += jitter.next_symmetric();
            start[1] += jitter.next_symmetric();
        }
        SimplexResult res = nelder_mead(objective, start, 0.25, 2000);
        any_converged = any_converged || res.converged;
        if (res.fval < best.fval) best = res;
    }

    FitResult out;
    out.family = f;
    out.n_restarts_used = n_restarts;
    out.converged = any_converged;
    if (!std::isfinite(best.fval)) {
        // Every restart diverged: report the initial point with a -inf
        // likelihood so callers can treat the fit as failed.
        out.params_hat = from_unconstrained(f, z_init);
        out.loglik_max = -kInf;
        out.observed_info = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
        out.covariance = std::nullopt;
        out.converged = false;
        return out;
    }
    out.params_hat = from_unconstrained(f, best.z);
    out.loglik_max = -best.fval;
    out.observed_info = observed_info_prepared(f, out.params_hat, prep);
    out.covariance = covariance_of(out.observed_info);
    return out;
}

}  // namespace detail

FitResult fit_mle(Family f, const LtrcSample& sample, std::uint64_t seed) {
    return detail::fit_mle_restarts(f, sample, seed, 5);
}

}  // namespace ltrc
