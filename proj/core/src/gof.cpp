#include "ltrc/gof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltrc/families.hpp"

namespace ltrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonempty(const LtrcSample& s) {
    if (s.size() == 0) {
        throw std::invalid_argument("goodness-of-fit statistics need a non-empty sample");
    }
}

}  // namespace

EmpiricalLtrcCdf::EmpiricalLtrcCdf(const LtrcSample& s) {
    require_nonempty(s);
    n_total = s.size();
    points.reserve(s.uncensored.size());
    cum.reserve(s.uncensored.size());
    for (double x : s.uncensored) {
        if (!points.empty() && x == points.back()) {
            ++cum.back();
        } else {
            points.push_back(x);
            cum.push_back(cum.empty() ? 1 : cum.back() + 1);
        }
    }
}

double ks_stat(Family f, const Params& prm, const TruncCens& w, const LtrcSample& s) {
    EmpiricalLtrcCdf emp(s);
    double best = 0.0;
    for (std::size_t j = 0; j < emp.points.size(); ++j) {
        double fitted = ltrc_cdf(f, prm, w, emp.points[j]);
        best = std::max(best, std::abs(emp.before(j) - fitted));
        best = std::max(best, std::abs(emp.at(j) - fitted));
    }
    // Gap at the censoring boundary: the empirical mass below u against the
    // fitted conditional mass there. Zero when there is no censoring.
    double p_u = censor_prob(f, prm, w);
    best = std::max(best, std::abs(emp.at_limit() - p_u));
    return best;
}

double ad_stat(Family f, const Params& prm, const TruncCens& w, const LtrcSample& s) {
    EmpiricalLtrcCdf emp(s);
    const double n = static_cast<double>(emp.n_total);
    const std::size_t k = emp.points.size();

    // Fitted conditional cdf at the unique points, plus the boundary value
    // F*(u-) closing the last segment.
    std::vector<double> t(k + 1);
    for (std::size_t j = 0; j < k; ++j) t[j] = ltrc_cdf(f, prm, w, emp.points[j]);
    const double cap = censor_prob(f, prm, w);
    t[k] = cap;

    // Exact integral of (F_n - F*)^2 / (F*(1-F*)) dF* over [d, u): on each
    // segment between consecutive jumps the empirical cdf is the constant
    // c_j, and the integrand splits as c^2/t + (1-c)^2/(1-t) - 1.
    double acc = -cap;
    double t_prev = 0.0;
    double c_prev = 0.0;
    for (std::size_t j = 0; j <= k; ++j) {
        double t_next = j < k ? t[j] : cap;
        if (j > 0) {
            t_prev = t[j - 1];
            c_prev = emp.at(j - 1);
        }
        if (c_prev > 0.0) {
            if (!(t_prev > 0.0)) return kInf;
            acc += c_prev * c_prev * std::log(t_next / t_prev);
        }
        double rc = 1.0 - c_prev;
        if (rc > 0.0) {
            if (!(t_next < 1.0)) return kInf;
            acc += rc * rc * std::log((1.0 - t_prev) / (1.0 - t_next));
        }
    }
    double ad = n * acc;
    return std::isfinite(ad) ? ad : kInf;
}

std::vector<std::pair<double, double>> qq_points(Family f, const Params& prm,
                                                 const TruncCens& w, const LtrcSample& s) {
    require_valid_window(w);
    const std::size_t m = s.n_uncensored();
    std::vector<std::pair<double, double>> out;
    out.reserve(m);
    const double fd = w.d > 0.0 ? cdf(f, prm, w.d) : 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        double ui = (static_cast<double>(i) - 0.5) / static_cast<double>(m);
        double level = ui + fd * (1.0 - ui);
        double theoretical = qf(f, prm, level);
        out.emplace_back(std::log(theoretical), std::log(s.uncensored[i - 1]));
    }
    return out;
}

}  // namespace ltrc
