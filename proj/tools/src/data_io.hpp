#pragma once

#include <string>
#include <vector>

#include "ltrc/types.hpp"
#include "options.hpp"

namespace ltrc::cli {

// One parsed input row, in file order.
struct LossRow {
    double loss;
    bool censored;
};

// Reads a loss CSV: a header line that must contain a "loss" column and may
// contain a "censored" column (values 0 or 1), then one row per observation.
// Throws data_error with the offending line number on any malformed or
// window-violating row.
std::vector<LossRow> read_loss_csv(const std::string& path, const RunConfig& cfg);

// Builds the validated sorted sample from parsed rows.
LtrcSample rows_to_sample(const std::vector<LossRow>& rows, const RunConfig& cfg);

// Shortest decimal form at six significant digits, for report tables.
std::string fmt6(double v);

// Round-trippable full-precision decimal form, for exported data files.
std::string fmt_full(double v);

}  // namespace ltrc::cli
