#pragma once

#include "ltrc/types.hpp"

namespace ltrc {

// Solves F(d) = p_d and F(u) = p_u for the family's two parameters, i.e.
// finds the member that puts the stated cdf mass at the two window points.
// d, u must satisfy 0 < d < u (u finite) and 0 < p_d < p_u < 1; violations
// throw std::invalid_argument. Families with a closed-form solution use it
// directly, the rest reduce to a bracketed one-dimensional root; every
// result is polished by a damped two-dimensional Newton iteration until
// both residuals are below 1e-10. Throws no_solution_error when the system
// has no solution (possible for Lomax) or the ratio constraints cannot be
// met to tolerance.
Params percentile_match(Family f, double d, double p_d, double u, double p_u);

}  // namespace ltrc
