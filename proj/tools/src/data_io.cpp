#include "data_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ltrc::cli {

namespace {

std::string trim(std::string s) {
    auto isspace_fn = [](unsigned char c) { return std::isspace(c) != 0; };
    while (!s.empty() && isspace_fn(s.back())) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && isspace_fn(s[b])) ++b;
    return s.substr(b);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double_field(const std::string& text, const std::string& path, std::size_t lineno,
                          const std::string& col) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw data_error(path + ":" + std::to_string(lineno) + ": column '" + col +
                         "' is not a number: '" + text + "'");
    }
    return v;
}

}  // namespace

std::vector<LossRow> read_loss_csv(const std::string& path, const RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open data file " + path);

    std::string line;
    std::size_t lineno = 0;

    // Header.
    if (!std::getline(in, line)) throw data_error(path + ": file is empty");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_fields(line);
    std::ptrdiff_t loss_col = -1;
    std::ptrdiff_t cens_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        std::string name = header[i];
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        if (name == "loss") loss_col = static_cast<std::ptrdiff_t>(i);
        if (name == "censored") cens_col = static_cast<std::ptrdiff_t>(i);
    }
    if (loss_col < 0) {
        throw data_error(path + ":1: header must contain a 'loss' column");
    }

    std::vector<LossRow> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() <= static_cast<std::size_t>(std::max(loss_col, cens_col))) {
            throw data_error(path + ":" + std::to_string(lineno) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        LossRow row{};
        row.loss = parse_double_field(fields[static_cast<std::size_t>(loss_col)], path, lineno,
                                      "loss");
        row.censored = false;
        if (cens_col >= 0) {
            const std::string& c = fields[static_cast<std::size_t>(cens_col)];
            if (c == "0") {
                row.censored = false;
            } else if (c == "1") {
                row.censored = true;
            } else {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": column 'censored' must be 0 or 1, got '" + c + "'");
            }
        }

        // Window checks, reported with the line that violates them.
        if (!std::isfinite(row.loss)) {
            throw data_error(path + ":" + std::to_string(lineno) + ": loss is not finite");
        }
        if (row.censored) {
            if (!std::isfinite(cfg.u)) {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": censored row needs a finite policy limit u");
            }
            if (std::abs(row.loss - cfg.u) > 1e-9 * cfg.u) {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": censored loss must equal the policy limit u=" + fmt_full(cfg.u) +
                                 ", got " + fmt_full(row.loss));
            }
        } else {
            if (!(row.loss > cfg.d)) {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": loss must exceed the deductible d=" + fmt_full(cfg.d) +
                                 ", got " + fmt_full(row.loss));
            }
            if (!(row.loss < cfg.u)) {
                throw data_error(path + ":" + std::to_string(lineno) +
                                 ": uncensored loss must lie below the policy limit u=" +
                                 fmt_full(cfg.u) + ", got " + fmt_full(row.loss));
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) throw data_error(path + ": no data rows");
    return rows;
}

LtrcSample rows_to_sample(const std::vector<LossRow>& rows, const RunConfig& cfg) {
    std::vector<double> uncensored;
    std::size_t n_censored = 0;
    for (const LossRow& r : rows) {
        if (r.censored) {
            ++n_censored;
        } else {
            uncensored.push_back(r.loss);
        }
    }
    return make_ltrc_sample(std::move(uncensored), n_censored, TruncCens{cfg.d, cfg.u});
}

std::string fmt6(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, ptr);
}

std::string fmt_full(double v) {
    if (std::isnan(v)) return "NA";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace ltrc::cli
