#pragma once

#include <stdexcept>
#include <string>

namespace ltrc {

// Thrown when F(d) is numerically 1, i.e. the truncation point sits so deep in
// the right tail of the candidate model that the conditional distribution on
// (d, u) is undefined to working precision.
class degenerate_window_error : public std::domain_error {
public:
    explicit degenerate_window_error(const std::string& what)
        : std::domain_error(what) {}
};

// Thrown by percentile matching when no parameter pair can satisfy the two
// cdf constraints (or the root finder exhausts its fallback starts).
class no_solution_error : public std::runtime_error {
public:
    explicit no_solution_error(const std::string& what)
        : std::runtime_error(what) {}
};

// Thrown by fit_mle when the sample has too few uncensored losses to
// identify a two-parameter family.
class insufficient_data_error : public std::invalid_argument {
public:
    explicit insufficient_data_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Thrown by run_study when more than 5% of replications had to be dropped.
class study_error : public std::runtime_error {
public:
    explicit study_error(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace ltrc
