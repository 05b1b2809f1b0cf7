#include "ltrc/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace ltrc {

std::string_view family_name(Family f) {
    switch (f) {
        case Family::fisk: return "fisk";
        case Family::frechet: return "frechet";
        case Family::lognormal: return "lognormal";
        case Family::lomax: return "lomax";
        case Family::paralogistic: return "paralogistic";
        case Family::weibull: return "weibull";
    }
    throw std::invalid_argument("unknown Family enumerator");
}

Family family_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (Family f : all_families) {
        if (lower == family_name(f)) return f;
    }
    throw std::invalid_argument("unknown family name: '" + std::string(name) + "'");
}

bool params_valid(Family f, const Params& p) {
    if (!std::isfinite(p.p1) || !std::isfinite(p.p2)) return false;
    if (p.p2 <= 0.0) return false;
    if (f != Family::lognormal && p.p1 <= 0.0) return false;
    return true;
}

void require_valid_params(Family f, const Params& p) {
    if (!params_valid(f, p)) {
        throw std::invalid_argument(std::string("invalid parameters for family ") +
                                    std::string(family_name(f)));
    }
}

bool window_valid(const TruncCens& w) {
    if (std::isnan(w.d) || std::isnan(w.u)) return false;
    return w.d >= 0.0 && std::isfinite(w.d) && w.d < w.u;
}

void require_valid_window(const TruncCens& w) {
    if (!window_valid(w)) {
        throw std::invalid_argument("invalid window: need 0 <= d < u");
    }
}

LtrcSample make_ltrc_sample(std::vector<double> uncensored, std::size_t n_censored,
                            const TruncCens& window) {
    require_valid_window(window);
    if (n_censored > 0 && !window.has_censoring()) {
        throw std::invalid_argument("censored losses require a finite policy limit u");
    }
    for (double x : uncensored) {
        if (!std::isfinite(x) || x <= window.d || x >= window.u) {
            throw std::invalid_argument("uncensored loss outside the open window (d, u)");
        }
    }
    std::sort(uncensored.begin(), uncensored.end());
    LtrcSample s;
    s.uncensored = std::move(uncensored);
    s.n_censored = n_censored;
    s.window = window;
    return s;
}

}  // namespace ltrc
