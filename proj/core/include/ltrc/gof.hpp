#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "ltrc/types.hpp"

namespace ltrc {

// Empirical conditional cdf of an LTRC sample: a step function over the
// distinct uncensored values, with the censored losses contributing only
// their count (the step never reaches 1 while censored mass remains).
struct EmpiricalLtrcCdf {
    explicit EmpiricalLtrcCdf(const LtrcSample& s);

    std::vector<double> points;       // distinct uncensored values, ascending
    std::vector<std::size_t> cum;     // cumulative uncensored counts at points
    std::size_t n_total = 0;

    double at(std::size_t j) const {  // value at points[j]
        return static_cast<double>(cum[j]) / static_cast<double>(n_total);
    }
    double before(std::size_t j) const {  // left limit at points[j]
        return j == 0 ? 0.0 : static_cast<double>(cum[j - 1]) / static_cast<double>(n_total);
    }
    // Empirical mass below the censoring point, i.e. the value just left of u.
    double at_limit() const {
        return points.empty() ? 0.0
                              : static_cast<double>(cum.back()) / static_cast<double>(n_total);
    }
};

// Kolmogorov-Smirnov distance between the empirical conditional cdf and the
// fitted conditional cdf, taken as a supremum over [d, u). Both one-sided
// gaps are evaluated at every jump, plus the gap at the censoring boundary.
double ks_stat(Family f, const Params& prm, const TruncCens& w, const LtrcSample& s);

// Anderson-Darling statistic for the same comparison: the exact value of the
// weighted squared-distance integral over [d, u), evaluated piecewise
// between consecutive jumps of the empirical cdf. Returns +inf when a
// required log argument is not positive (total misfit).
double ad_stat(Family f, const Params& prm, const TruncCens& w, const LtrcSample& s);

// Log-log QQ plot coordinates for the uncensored losses: point i pairs the
// fitted quantile at level u_i + F(d) (1 - u_i), u_i = (i - 0.5) / m, with
// the i-th order statistic, both on the log scale. m is the number of
// uncensored losses; censored ones are not plotted.
std::vector<std::pair<double, double>> qq_points(Family f, const Params& prm,
                                                 const TruncCens& w, const LtrcSample& s);

}  // namespace ltrc
