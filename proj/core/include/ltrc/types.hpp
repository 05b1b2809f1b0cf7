#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace ltrc {

// Two-parameter severity families. The enumerator order is the canonical
// order used wherever families are listed or iterated.
enum class Family : int {
    fisk = 0,
    frechet,
    lognormal,
    lomax,
    paralogistic,
    weibull,
};

inline constexpr std::array<Family, 6> all_families = {
    Family::fisk,      Family::frechet,      Family::lognormal,
    Family::lomax,     Family::paralogistic, Family::weibull,
};

std::string_view family_name(Family f);

// Case-insensitive parse of a family name ("fisk", "Lognormal", ...).
// Throws std::invalid_argument on an unknown name.
Family family_from_string(std::string_view name);

// Parameter pair. For every family except Lognormal, p1 is the shape alpha
// and p2 is the scale theta (both must be positive). For Lognormal, p1 is
// the log-mean mu (any real) and p2 is the log-sd sigma (positive).
struct Params {
    double p1 = 0.0;
    double p2 = 0.0;
};

// True if the pair is a valid parameter vector for the family.
bool params_valid(Family f, const Params& p);

// Throws std::invalid_argument if params_valid is false.
void require_valid_params(Family f, const Params& p);

// Observation window: losses below the deductible d are never observed
// (left truncation) and losses at or above the policy limit u are recorded
// as exactly u (right censoring). u may be infinite, meaning no censoring.
struct TruncCens {
    double d = 0.0;
    double u = std::numeric_limits<double>::infinity();

    bool has_censoring() const { return u < std::numeric_limits<double>::infinity(); }
};

bool window_valid(const TruncCens& w);
void require_valid_window(const TruncCens& w);

// An observed LTRC sample: the uncensored losses sorted ascending (each
// strictly inside (d, u)) plus the count of losses censored at u.
struct LtrcSample {
    std::vector<double> uncensored;
    std::size_t n_censored = 0;
    TruncCens window;

    std::size_t n_uncensored() const { return uncensored.size(); }
    std::size_t size() const { return uncensored.size() + n_censored; }
};

// Builds a sample from unsorted uncensored losses, sorting them and checking
// every value against the window. Throws std::invalid_argument on a value
// outside (d, u), a censored count with an infinite u, or an invalid window.
LtrcSample make_ltrc_sample(std::vector<double> uncensored, std::size_t n_censored,
                            const TruncCens& window);

}  // namespace ltrc
