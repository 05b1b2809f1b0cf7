#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltrc/types.hpp"

namespace ltrc::cli {

using ordered_json = nlohmann::ordered_json;

// Bad flags or an unsatisfiable configuration (exit code 2).
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or invariant-violating input data (exit code 3).
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Command { fit, qq, simulate, calibrate };

// Fully resolved run configuration. Defaults are overridden first by a
// config file (--config, which may also be a previously emitted report with
// an embedded "config" object) and then by command-line flags.
struct RunConfig {
    double d = 0.0;
    double u = std::numeric_limits<double>::infinity();
    std::vector<Family> families;
    std::uint64_t seed = 1;
    double p_d = 0.10;
    double p_u = 0.85;
    std::size_t n = 1000;
    std::size_t replications = 100;  // the config key "N"
    std::string out_dir = ".";
    std::vector<std::string> formats = {"csv", "json"};

    bool wants(const std::string& fmt) const;
};

// Optional per-field overrides collected from command-line flags.
struct FlagOverrides {
    std::optional<double> d;
    std::optional<std::string> u;  // may be the literal "inf"
    std::optional<std::string> families;
    std::optional<std::uint64_t> seed;
    std::optional<double> p_d;
    std::optional<double> p_u;
    std::optional<std::size_t> n;
    std::optional<std::size_t> replications;
    std::optional<std::string> out_dir;
    std::optional<std::string> formats;
};

double parse_u_value(const std::string& text);
std::vector<Family> parse_family_list(const std::string& csv);

// Defaults -> config file (if any) -> flags, then validation for the given
// command. Throws usage_error on any violation and data_error when the
// config file itself cannot be read.
RunConfig resolve_config(Command cmd, const std::string& config_path,
                         const FlagOverrides& flags);

// The config object embedded verbatim in every report. out_dir is excluded:
// it controls placement, not content, and must not break byte-for-byte
// reproduction when a report is regenerated elsewhere.
ordered_json config_echo(const RunConfig& cfg);

}  // namespace ltrc::cli
