#include "ltrc/families.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kernels.hpp"
#include "ltrc/errors.hpp"
#include "ltrc/normal.hpp"

namespace ltrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfLog2Pi = 0.9189385332046727418;
// S(d) below this means F(d) is 1 to working precision: no conditional
// distribution exists on the window.
constexpr double kDegenerateSf = 1e-12;

double softplus(double z) {
    if (z > 36.0) return z;
    if (z < -37.0) return std::exp(z);
    return std::log1p(std::exp(z));
}

// log(1 - exp(w)) for w <= 0.
double log1mexp(double w) {
    if (w > -M_LN2) return std::log(-std::expm1(w));
    return std::log1p(-std::exp(w));
}

double logistic(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    double e = std::exp(z);
    return e / (1.0 + e);
}

// Shared per-point math. Every family is parameterised so that the scaled
// log loss t = log(x) - log(theta) drives the formulas; Lognormal uses the
// standardised score instead.

double log_pdf_impl(Family f, const Params& prm, double x, double lx) {
    switch (f) {
        case Family::fisk: {
            double a = prm.p1, lth = std::log(prm.p2);
            return std::log(a) + (a - 1.0) * lx - a * lth - 2.0 * softplus(a * (lx - lth));
        }
        case Family::frechet: {
            double a = prm.p1, lth = std::log(prm.p2);
            return std::log(a) + a * lth - (a + 1.0) * lx - std::exp(-a * (lx - lth));
        }
        case Family::lognormal: {
            double c = (lx - prm.p1) / prm.p2;
            return -std::log(prm.p2) - lx - kHalfLog2Pi - 0.5 * c * c;
        }
        case Family::lomax: {
            double a = prm.p1, th = prm.p2;
            return std::log(a) - std::log(th) - (a + 1.0) * std::log1p(x / th);
        }
        case Family::paralogistic: {
            double a = prm.p1, lth = std::log(prm.p2);
            double at = a * (lx - lth);
            return 2.0 * std::log(a) + at - (a + 1.0) * softplus(at) - lx;
        }
        case Family::weibull: {
            double a = prm.p1, lth = std::log(prm.p2);
            double at = a * (lx - lth);
            return std::log(a) + at - lx - std::exp(at);
        }
    }
    throw std::invalid_argument("unknown Family enumerator");
}

double cdf_impl(Family f, const Params& prm, double x, double lx) {
    switch (f) {
        case Family::fisk:
            return logistic(prm.p1 * (lx - std::log(prm.p2)));
        case Family::frechet:
            return std::exp(-std::exp(-prm.p1 * (lx - std::log(prm.p2))));
        case Family::lognormal:
            return norm_cdf((lx - prm.p1) / prm.p2);
        case Family::lomax:
            return -std::expm1(-prm.p1 * std::log1p(x / prm.p2));
        case Family::paralogistic:
            return -std::expm1(-prm.p1 * softplus(prm.p1 * (lx - std::log(prm.p2))));
        case Family::weibull:
            return -std::expm1(-std::exp(prm.p1 * (lx - std::log(prm.p2))));
    }
    throw std::invalid_argument("unknown Family enumerator");
}

double log_sf_impl(Family f, const Params& prm, double x, double lx) {
    switch (f) {
        case Family::fisk:
            return -softplus(prm.p1 * (lx - std::log(prm.p2)));
        case Family::frechet:
            return log1mexp(-std::exp(-prm.p1 * (lx - std::log(prm.p2))));
        case Family::lognormal:
            return norm_log_sf((lx - prm.p1) / prm.p2);
        case Family::lomax:
            return -prm.p1 * std::log1p(x / prm.p2);
        case Family::paralogistic:
            return -prm.p1 * softplus(prm.p1 * (lx - std::log(prm.p2)));
        case Family::weibull:
            return -std::exp(prm.p1 * (lx - std::log(prm.p2)));
    }
    throw std::invalid_argument("unknown Family enumerator");
}

// Ground-up quantile from a survival target s in (0, 1). Working from the
// survival side keeps precision in the right tail, which is where the
// conditional quantile lands once S(d)(1 - p) gets small.
double qf_from_sf(Family f, const Params& prm, double s) {
    switch (f) {
        case Family::fisk:
            return prm.p2 * std::exp((std::log1p(-s) - std::log(s)) / prm.p1);
        case Family::frechet:
            return prm.p2 * std::exp(-std::log(-std::log1p(-s)) / prm.p1);
        case Family::lognormal:
            return std::exp(prm.p1 - prm.p2 * norm_quantile(s));
        case Family::lomax:
            return prm.p2 * std::expm1(-std::log(s) / prm.p1);
        case Family::paralogistic:
            return prm.p2 * std::exp(std::log(std::expm1(-std::log(s) / prm.p1)) / prm.p1);
        case Family::weibull:
            return prm.p2 * std::exp(std::log(-std::log(s)) / prm.p1);
    }
    throw std::invalid_argument("unknown Family enumerator");
}

// log S(x) with the convention S(x) = 1 for x <= 0 (used at d = 0).
double log_sf_at(Family f, const Params& prm, double x) {
    if (x <= 0.0) return 0.0;
    return log_sf_impl(f, prm, x, std::log(x));
}

void require_positive_x(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error("loss value must be a positive real");
    }
}

double checked_log_sf_d(Family f, const Params& prm, const TruncCens& w) {
    double lsd = log_sf_at(f, prm, w.d);
    if (!(lsd > std::log(kDegenerateSf))) {
        throw degenerate_window_error(
            "F(d) is numerically 1 under this model: conditional distribution undefined");
    }
    return lsd;
}

}  // namespace

double log_pdf(Family f, const Params& prm, double x) {
    require_valid_params(f, prm);
    require_positive_x(x);
    return log_pdf_impl(f, prm, x, std::log(x));
}

double pdf(Family f, const Params& prm, double x) {
    return std::exp(log_pdf(f, prm, x));
}

double cdf(Family f, const Params& prm, double x) {
    require_valid_params(f, prm);
    require_positive_x(x);
    double v = cdf_impl(f, prm, x, std::log(x));
    return std::clamp(v, 0.0, 1.0);
}

double sf(Family f, const Params& prm, double x) {
    require_valid_params(f, prm);
    require_positive_x(x);
    if (f == Family::fisk) {
        // Direct form, exact complement of the cdf around the median.
        return logistic(-prm.p1 * (std::log(x) - std::log(prm.p2)));
    }
    if (f == Family::frechet) {
        return -std::expm1(-std::exp(-prm.p1 * (std::log(x) - std::log(prm.p2))));
    }
    return std::exp(log_sf_impl(f, prm, x, std::log(x)));
}

double log_sf(Family f, const Params& prm, double x) {
    require_valid_params(f, prm);
    require_positive_x(x);
    return log_sf_impl(f, prm, x, std::log(x));
}

double qf(Family f, const Params& prm, double p) {
    require_valid_params(f, prm);
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("qf requires p in (0, 1)");
    }
    if (f == Family::lognormal) {
        return std::exp(prm.p1 + prm.p2 * norm_quantile(p));
    }
    if (f == Family::frechet) {
        // Lower tail needs log p rather than log(1 - s).
        return prm.p2 * std::exp(-std::log(-std::log(p)) / prm.p1);
    }
    if (f == Family::fisk) {
        return prm.p2 * std::exp((std::log(p) - std::log1p(-p)) / prm.p1);
    }
    if (f == Family::weibull) {
        return prm.p2 * std::exp(std::log(-std::log1p(-p)) / prm.p1);
    }
    return qf_from_sf(f, prm, 1.0 - p);
}

double ltrc_cdf(Family f, const Params& prm, const TruncCens& w, double x) {
    require_valid_params(f, prm);
    require_valid_window(w);
    double lsd = checked_log_sf_d(f, prm, w);
    if (x <= w.d) return 0.0;
    if (x >= w.u) return 1.0;
    double v = -std::expm1(log_sf_at(f, prm, x) - lsd);
    return std::clamp(v, 0.0, 1.0);
}

double censor_prob(Family f, const Params& prm, const TruncCens& w) {
    require_valid_params(f, prm);
    require_valid_window(w);
    double lsd = checked_log_sf_d(f, prm, w);
    if (!w.has_censoring()) return 1.0;
    double v = -std::expm1(log_sf_at(f, prm, w.u) - lsd);
    return std::clamp(v, 0.0, 1.0);
}

double ltrc_qf(Family f, const Params& prm, const TruncCens& w, double p) {
    require_valid_params(f, prm);
    require_valid_window(w);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::domain_error("ltrc_qf requires p in [0, 1]");
    }
    double lsd = checked_log_sf_d(f, prm, w);
    double p_u = w.has_censoring() ? std::clamp(-std::expm1(log_sf_at(f, prm, w.u) - lsd), 0.0, 1.0)
                                   : 1.0;
    if (p >= p_u) return w.u;
    if (p == 0.0) return w.d;
    double s_target = std::exp(lsd) * (1.0 - p);
    double x = qf_from_sf(f, prm, s_target);
    // The exact root lies strictly inside (d, u); keep rounding out of the
    // closed endpoints.
    if (x <= w.d) x = std::nextafter(w.d, kInf);
    if (x >= w.u) x = std::nextafter(w.u, -kInf);
    return x;
}

PreparedSample::PreparedSample(const LtrcSample& s) {
    require_valid_window(s.window);
    if (!std::is_sorted(s.uncensored.begin(), s.uncensored.end())) {
        throw std::invalid_argument("LtrcSample uncensored losses must be sorted ascending");
    }
    if (!s.uncensored.empty() &&
        (s.uncensored.front() <= s.window.d || s.uncensored.back() >= s.window.u)) {
        throw std::invalid_argument("uncensored loss outside the open window (d, u)");
    }
    if (s.n_censored > 0 && !s.window.has_censoring()) {
        throw std::invalid_argument("censored losses require a finite policy limit u");
    }
    x = s.uncensored;
    n_unc = x.size();
    n_cens = s.n_censored;
    d = s.window.d;
    u = s.window.u;
    log_x.resize(n_unc);
    for (std::size_t i = 0; i < n_unc; ++i) log_x[i] = std::log(x[i]);
    // Compensated sum, then centred second moment in a second pass. The
    // Lognormal likelihood consumes these directly; centring keeps it from
    // cancelling digits at n = 100k.
    double c1 = 0.0;
    for (double lx : log_x) {
        double y = lx - c1;
        double t = sum_log_x + y;
        c1 = (t - sum_log_x) - y;
        sum_log_x = t;
    }
    if (n_unc > 0) {
        mean_log_x = sum_log_x / static_cast<double>(n_unc);
        double c2 = 0.0;
        for (double lx : log_x) {
            double dev = lx - mean_log_x;
            double y = dev * dev - c2;
            double t = m2_log_x + y;
            c2 = (t - m2_log_x) - y;
            m2_log_x = t;
        }
    }
}

double loglik(Family f, const Params& prm, const PreparedSample& prep) {
    require_valid_params(f, prm);
    // Scale guard: far outside any data-supported range the kernels could
    // overflow; the likelihood out there is hopeless anyway.
    if (prm.p2 < 1e-250 || prm.p2 > 1e250) return -kInf;

    const double n = static_cast<double>(prep.n());
    const double nu = static_cast<double>(prep.n_unc);
    const double nc = static_cast<double>(prep.n_cens);
    const std::size_t m = prep.n_unc;
    const double* lxp = prep.log_x.data();

    double sum_logf = 0.0;
    switch (f) {
        case Family::fisk: {
            double a = prm.p1, lth = std::log(prm.p2);
            sum_logf = nu * (std::log(a) - a * lth) + (a - 1.0) * prep.sum_log_x -
                       2.0 * detail::ksum_softplus(lxp, m, a, -a * lth);
            break;
        }
        case Family::frechet: {
            double a = prm.p1, lth = std::log(prm.p2);
            sum_logf = nu * (std::log(a) + a * lth) - (a + 1.0) * prep.sum_log_x -
                       detail::ksum_exp(lxp, m, -a, a * lth);
            break;
        }
        case Family::lognormal: {
            double mu = prm.p1, sg = prm.p2;
            double shift = prep.mean_log_x - mu;
            double dev = prep.m2_log_x + nu * shift * shift;
            sum_logf = -nu * (std::log(sg) + kHalfLog2Pi) - prep.sum_log_x -
                       0.5 * dev / (sg * sg);
            break;
        }
        case Family::lomax: {
            double a = prm.p1, th = prm.p2;
            sum_logf = nu * (std::log(a) - std::log(th)) -
                       (a + 1.0) * detail::ksum_log1p_scaled(prep.x.data(), m, 1.0 / th);
            break;
        }
        case Family::paralogistic: {
            double a = prm.p1, lth = std::log(prm.p2);
            sum_logf = nu * 2.0 * std::log(a) + a * (prep.sum_log_x - nu * lth) -
                       prep.sum_log_x - (a + 1.0) * detail::ksum_softplus(lxp, m, a, -a * lth);
            break;
        }
        case Family::weibull: {
            double a = prm.p1, lth = std::log(prm.p2);
            sum_logf = nu * std::log(a) + a * (prep.sum_log_x - nu * lth) - prep.sum_log_x -
                       detail::ksum_exp(lxp, m, a, -a * lth);
            break;
        }
    }

    double lsd = log_sf_at(f, prm, prep.d);
    double ll = sum_logf - n * lsd;
    if (prep.n_cens > 0) {
        ll += nc * log_sf_at(f, prm, prep.u);
    }
    return std::isfinite(ll) ? ll : -kInf;
}

double loglik(Family f, const Params& prm, const LtrcSample& sample) {
    return loglik(f, prm, PreparedSample(sample));
}

}  // namespace ltrc
