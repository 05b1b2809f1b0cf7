#include "options.hpp"

#include "ltrc/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ltrc::cli {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const std::set<std::string> kConfigKeys = {"d",  "u", "families", "seed",    "p_d",
                                           "p_u", "n", "N",        "formats", "out_dir"};

void apply_json_config(RunConfig& cfg, const nlohmann::json& j, const std::string& path) {
    if (!j.is_object()) {
        throw usage_error("config file " + path + " must hold a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!kConfigKeys.count(key)) {
            throw usage_error("config file " + path + ": unknown key '" + key + "'");
        }
        try {
            if (key == "d") {
                cfg.d = value.get<double>();
            } else if (key == "u") {
                cfg.u = value.is_string() ? parse_u_value(value.get<std::string>())
                                          : value.get<double>();
            } else if (key == "families") {
                cfg.families.clear();
                for (const auto& name : value) {
                    cfg.families.push_back(family_from_string(name.get<std::string>()));
                }
            } else if (key == "seed") {
                cfg.seed = value.get<std::uint64_t>();
            } else if (key == "p_d") {
                cfg.p_d = value.get<double>();
            } else if (key == "p_u") {
                cfg.p_u = value.get<double>();
            } else if (key == "n") {
                cfg.n = value.get<std::size_t>();
            } else if (key == "N") {
                cfg.replications = value.get<std::size_t>();
            } else if (key == "formats") {
                cfg.formats = value.get<std::vector<std::string>>();
            } else if (key == "out_dir") {
                cfg.out_dir = value.get<std::string>();
            }
        } catch (const usage_error&) {
            throw;
        } catch (const std::exception& e) {
            throw usage_error("config file " + path + ": bad value for '" + key +
                              "': " + e.what());
        }
    }
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        // Trim surrounding whitespace.
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

}  // namespace

bool RunConfig::wants(const std::string& fmt) const {
    return std::find(formats.begin(), formats.end(), fmt) != formats.end();
}

double parse_u_value(const std::string& text) {
    if (lower(text) == "inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw usage_error("--u expects a number or 'inf', got '" + text + "'");
    }
}

std::vector<Family> parse_family_list(const std::string& csv) {
    std::vector<Family> out;
    for (const std::string& name : split_csv_list(csv)) {
        try {
            out.push_back(family_from_string(name));
        } catch (const std::exception&) {
            throw usage_error("unknown family '" + name + "'");
        }
    }
    if (out.empty()) throw usage_error("family list is empty");
    return out;
}

RunConfig resolve_config(Command cmd, const std::string& config_path,
                         const FlagOverrides& flags) {
    RunConfig cfg;
    if (cmd == Command::simulate || cmd == Command::calibrate) {
        // Study commands default to the reference observation window; fit and
        // qq keep the no-truncation, no-censoring default.
        cfg.d = 500.0;
        cfg.u = 10000.0;
    }
    bool families_specified = false;

    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw data_error("cannot open config file " + config_path);
        std::string first_line;
        std::getline(in, first_line);
        if (!first_line.empty() && first_line.back() == '\r') first_line.pop_back();
        nlohmann::json j;
        try {
            const std::string csv_prefix = "# config: ";
            if (first_line.rfind(csv_prefix, 0) == 0) {
                // A CSV report: its first line echoes the config.
                j = nlohmann::json::parse(first_line.substr(csv_prefix.size()));
            } else {
                in.clear();
                in.seekg(0);
                in >> j;
            }
        } catch (const std::exception& e) {
            throw data_error("config file " + config_path + " is not valid JSON: " + e.what());
        }
        // A previously emitted JSON report carries its config under "config".
        const nlohmann::json& body =
            j.is_object() && j.contains("config") && j["config"].is_object() ? j["config"] : j;
        apply_json_config(cfg, body, config_path);
        families_specified = body.contains("families");
    }

    if (flags.d) cfg.d = *flags.d;
    if (flags.u) cfg.u = parse_u_value(*flags.u);
    if (flags.families) {
        cfg.families = parse_family_list(*flags.families);
        families_specified = true;
    }
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.p_d) cfg.p_d = *flags.p_d;
    if (flags.p_u) cfg.p_u = *flags.p_u;
    if (flags.n) cfg.n = *flags.n;
    if (flags.replications) cfg.replications = *flags.replications;
    if (flags.out_dir) cfg.out_dir = *flags.out_dir;
    if (flags.formats) {
        cfg.formats = split_csv_list(*flags.formats);
    }

    if (!families_specified) {
        if (cmd == Command::fit || cmd == Command::qq) {
            cfg.families.assign(all_families.begin(), all_families.end());
        } else {
            cfg.families = default_study_families();
        }
    }

    // Shared validation.
    if (!(cfg.d >= 0.0) || !std::isfinite(cfg.d)) {
        throw usage_error("d must be a finite value >= 0");
    }
    if (!(cfg.u > cfg.d)) throw usage_error("u must exceed d");
    if (cfg.families.empty()) throw usage_error("family list is empty");
    if (cfg.formats.empty()) throw usage_error("formats list is empty");
    for (const auto& fmt : cfg.formats) {
        if (fmt != "csv" && fmt != "json") {
            throw usage_error("unknown output format '" + fmt + "' (expected csv or json)");
        }
    }

    if (cmd == Command::simulate || cmd == Command::calibrate) {
        if (!std::isfinite(cfg.u)) {
            throw usage_error("this command needs a finite policy limit u");
        }
        if (!(cfg.d > 0.0)) {
            throw usage_error("this command needs a positive deductible d");
        }
        if (!(cfg.p_d > 0.0 && cfg.p_d < cfg.p_u && cfg.p_u < 1.0)) {
            throw usage_error("need 0 < p_d < p_u < 1");
        }
    }
    if (cmd == Command::simulate) {
        if (cfg.n < 3) throw usage_error("study sample size n must be at least 3");
        if (cfg.replications < 1) throw usage_error("replication count N must be at least 1");
    }
    return cfg;
}

ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["d"] = cfg.d;
    if (std::isfinite(cfg.u)) {
        j["u"] = cfg.u;
    } else {
        j["u"] = "inf";
    }
    std::vector<std::string> fams;
    for (Family f : cfg.families) fams.emplace_back(family_name(f));
    j["families"] = fams;
    j["seed"] = cfg.seed;
    j["p_d"] = cfg.p_d;
    j["p_u"] = cfg.p_u;
    j["n"] = cfg.n;
    j["N"] = cfg.replications;
    j["formats"] = cfg.formats;
    return j;
}

}  // namespace ltrc::cli
