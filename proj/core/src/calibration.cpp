#include "ltrc/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ltrc/errors.hpp"
#include "ltrc/families.hpp"
#include "ltrc/normal.hpp"

namespace ltrc {

namespace {

struct CalTarget {
    Family f;
    double d, u, p_d, p_u;
};

double logit(double p) { return std::log(p) - std::log1p(-p); }

double residual(const CalTarget& t, const Params& prm) {
    if (!params_valid(t.f, prm)) return std::numeric_limits<double>::infinity();
    double rd = cdf(t.f, prm, t.d) - t.p_d;
    double ru = cdf(t.f, prm, t.u) - t.p_u;
    return std::max(std::abs(rd), std::abs(ru));
}

// Unconstrained coordinates for the polish step: log for positive params,
// the Lognormal location raw.
std::array<double, 2> to_z(Family f, const Params& p) {
    return {f == Family::lognormal ? p.p1 : std::log(p.p1), std::log(p.p2)};
}

Params from_z(Family f, const std::array<double, 2>& z) {
    return {f == Family::lognormal ? z[0] : std::exp(z[0]), std::exp(z[1])};
}

// Damped Newton on the two cdf residuals, Jacobian by central differences.
// Returns true when both residuals end below 1e-13 (or could not be
// improved further but are already below the 1e-10 post-condition).
bool newton_polish(const CalTarget& t, Params& prm) {
    auto g = [&](const std::array<double, 2>& z) -> std::array<double, 2> {
        Params p = from_z(t.f, z);
        return {cdf(t.f, p, t.d) - t.p_d, cdf(t.f, p, t.u) - t.p_u};
    };
    auto norm_of = [](const std::array<double, 2>& r) {
        return std::max(std::abs(r[0]), std::abs(r[1]));
    };

    std::array<double, 2> z = to_z(t.f, prm);
    std::array<double, 2> r = g(z);
    double rn = norm_of(r);
    for (int iter = 0; iter < 100 && rn >= 1e-13; ++iter) {
        double j[2][2];
        for (int c = 0; c < 2; ++c) {
            double h = 1e-6 * std::max(1.0, std::abs(z[c]));
            auto zp = z, zm = z;
            zp[c] += h;
            zm[c] -= h;
            auto rp = g(zp), rm = g(zm);
            j[0][c] = (rp[0] - rm[0]) / (2.0 * h);
            j[1][c] = (rp[1] - rm[1]) / (2.0 * h);
        }
        double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if (!std::isfinite(det) || det == 0.0) break;
        double dz0 = (j[1][1] * r[0] - j[0][1] * r[1]) / det;
        double dz1 = (j[0][0] * r[1] - j[1][0] * r[0]) / det;

        bool improved = false;
        double scale = 1.0;
        for (int halving = 0; halving < 30; ++halving, scale *= 0.5) {
            std::array<double, 2> zc = {z[0] - scale * dz0, z[1] - scale * dz1};
            if (!std::isfinite(zc[0]) || !std::isfinite(zc[1])) continue;
            auto rc = g(zc);
            double rcn = norm_of(rc);
            if (std::isfinite(rcn) && rcn < rn) {
                z = zc;
                r = rc;
                rn = rcn;
                improved = true;
                break;
            }
        }
        if (!improved) break;
    }
    prm = from_z(t.f, z);
    return rn < 1e-10;
}

double bisect(const std::function<double(double)>& g, double lo, double hi) {
    double glo = g(lo);
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double gm = g(mid);
        if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Family-specific solution of F(d) = p_d, F(u) = p_u: closed form where one
// exists, otherwise reduction to a bracketed one-dimensional root.
Params initial_guess(const CalTarget& t) {
    const double ld = std::log(t.d), lu = std::log(t.u);
    switch (t.f) {
        case Family::fisk: {
            double a = (logit(t.p_u) - logit(t.p_d)) / (lu - ld);
            return {a, std::exp(ld - logit(t.p_d) / a)};
        }
        case Family::lognormal: {
            double zd = norm_quantile(t.p_d), zu = norm_quantile(t.p_u);
            double sg = (lu - ld) / (zu - zd);
            return {ld - sg * zd, sg};
        }
        case Family::weibull: {
            double capd = -std::log1p(-t.p_d), capu = -std::log1p(-t.p_u);
            double a = (std::log(capu) - std::log(capd)) / (lu - ld);
            return {a, std::exp(ld - std::log(capd) / a)};
        }
        case Family::frechet: {
            double gd = -std::log(t.p_d), gu = -std::log(t.p_u);
            double a = (std::log(gd) - std::log(gu)) / (lu - ld);
            return {a, std::exp(ld + std::log(gd) / a)};
        }
        case Family::lomax: {
            // With H(x) = -log S(x) = alpha log1p(x/theta), the target ratio
            // H(d)/H(u) runs from d/u (theta -> inf) up to 1 (theta -> 0),
            // so a solution exists iff the ratio lies strictly inside.
            double capd = -std::log1p(-t.p_d), capu = -std::log1p(-t.p_u);
            double ratio = capd / capu;
            if (ratio <= t.d / t.u) {
                throw no_solution_error(
                    "no Lomax member matches these percentiles: tail constraint "
                    "requires -log S(d) / -log S(u) > d / u");
            }
            auto g = [&](double lth) {
                return std::log1p(t.d * std::exp(-lth)) / std::log1p(t.u * std::exp(-lth)) -
                       ratio;
            };
            double lo = ld - 40.0, hi = lu + 40.0;
            while (g(lo) < 0.0 && lo > ld - 600.0) lo -= 40.0;
            while (g(hi) > 0.0 && hi < lu + 600.0) hi += 40.0;
            double lth = bisect(g, lo, hi);
            double th = std::exp(lth);
            return {capd / std::log1p(t.d / th), th};
        }
        case Family::paralogistic: {
            // One-dimensional in the shape: eliminate theta between the two
            // constraints. h is continuous, +inf at 0+ and -inf at infinity.
            double capd = -std::log1p(-t.p_d), capu = -std::log1p(-t.p_u);
            auto h = [&](double a) {
                return std::log(std::expm1(capu / a)) - std::log(std::expm1(capd / a)) -
                       a * (lu - ld);
            };
            double lo = 1e-6, hi = 1.0;
            while (h(hi) > 0.0 && hi < 1e6) hi *= 2.0;
            double a = bisect(h, lo, hi);
            double th = std::exp(ld - std::log(std::expm1(capd / a)) / a);
            return {a, th};
        }
    }
    throw std::invalid_argument("unknown Family enumerator");
}

}  // namespace

Params percentile_match(Family f, double d, double p_d, double u, double p_u) {
    if (!(d > 0.0) || !std::isfinite(d) || !std::isfinite(u) || !(d < u)) {
        throw std::invalid_argument("percentile_match requires 0 < d < u, both finite");
    }
    if (!(p_d > 0.0 && p_d < p_u && p_u < 1.0)) {
        throw std::invalid_argument("percentile_match requires 0 < p_d < p_u < 1");
    }
    CalTarget t{f, d, u, p_d, p_u};

    std::vector<Params> starts;
    // initial_guess throwing no_solution_error means no member exists at
    // all; there is nothing a different start could do about that.
    starts.push_back(initial_guess(t));
    double scale = std::sqrt(d * u);
    for (double shape : {1.0, 0.5, 2.0, 0.25, 4.0}) {
        if (f == Family::lognormal) {
            starts.push_back({std::log(scale), shape});
        } else {
            starts.push_back({shape, scale});
        }
    }

    for (const Params& start : starts) {
        if (!params_valid(f, start)) continue;
        Params prm = start;
        if (newton_polish(t, prm) && residual(t, prm) < 1e-10) {
            return prm;
        }
    }
    throw no_solution_error("percentile_match: root finder failed on family " +
                            std::string(family_name(f)));
}

}  // namespace ltrc
