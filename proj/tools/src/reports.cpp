#include "reports.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>

#include "data_io.hpp"
#include "ltrc/calibration.hpp"
#include "ltrc/errors.hpp"
#include "ltrc/estimation.hpp"
#include "ltrc/families.hpp"
#include "ltrc/gof.hpp"
#include "ltrc/rng.hpp"

namespace ltrc::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::ofstream open_out(const RunConfig& cfg, const std::string& name, std::string& path_out) {
    std::filesystem::create_directories(cfg.out_dir);
    path_out = (std::filesystem::path(cfg.out_dir) / name).string();
    std::ofstream out(path_out);
    if (!out) throw data_error("cannot write " + path_out);
    return out;
}

void write_config_comment(std::ofstream& out, const RunConfig& cfg) {
    out << "# config: " << config_echo(cfg).dump() << "\n";
}

std::string fmt_opt(const std::optional<double>& v) {
    return v ? fmt6(*v) : "NA";
}

// Table column convention: the first parameter row holds the scale theta
// (the location mu for Lognormal), the second the shape alpha (sigma).
double theta_of(Family f, const Params& p) {
    return f == Family::lognormal ? p.p1 : p.p2;
}
double alpha_of(Family f, const Params& p) {
    return f == Family::lognormal ? p.p2 : p.p1;
}
const char* p1_name(Family f) { return f == Family::lognormal ? "mu" : "alpha"; }
const char* p2_name(Family f) { return f == Family::lognormal ? "sigma" : "theta"; }

nlohmann::json json_num(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

ordered_json delta_json(const std::optional<DeltaEvidence>& de) {
    if (!de) return nullptr;
    ordered_json j;
    j["delta"] = de->delta;
    j["evidence"] = std::string(evidence_name(de->grade));
    return j;
}

}  // namespace

std::vector<FamilyReport> run_fit_pipeline(const RunConfig& cfg, const LtrcSample& sample) {
    std::vector<FamilyReport> reports;
    reports.reserve(cfg.families.size());
    std::vector<CriteriaRow> rows(cfg.families.size());

    for (std::size_t i = 0; i < cfg.families.size(); ++i) {
        Family f = cfg.families[i];
        FamilyReport rep;
        rep.row.family = f;
        rep.row.ks = kNaN;
        rep.row.ad = kNaN;
        rep.row.aic = kNaN;
        rep.row.bic = kNaN;
        rep.f_d_hat = kNaN;
        rep.f_u_hat = kNaN;
        try {
            FitResult fit = fit_mle(f, sample, derive_seed(cfg.seed, static_cast<std::uint64_t>(f)));
            rep.converged = fit.converged;
            rep.row.params_hat = fit.params_hat;
            rep.row.loglik = fit.loglik_max;
            if (std::isfinite(fit.loglik_max)) {
                rep.row.fitted = true;
                rep.row.aic = aic(fit.loglik_max, 2);
                rep.row.bic = bic(fit.loglik_max, 2, sample.size());
                rep.row.icomp = icomp(fit.loglik_max, fit.covariance);
                try {
                    rep.row.ks = ks_stat(f, fit.params_hat, sample.window, sample);
                    rep.row.ad = ad_stat(f, fit.params_hat, sample.window, sample);
                } catch (const std::exception& e) {
                    rep.error = e.what();
                }
                rep.f_d_hat = sample.window.d > 0 ? cdf(f, fit.params_hat, sample.window.d) : 0.0;
                rep.f_u_hat = std::isfinite(sample.window.u)
                                  ? cdf(f, fit.params_hat, sample.window.u)
                                  : 1.0;
            } else {
                rep.error = "maximum likelihood search failed";
            }
        } catch (const std::exception& e) {
            rep.error = e.what();
        }
        rows[i] = rep.row;
        reports.push_back(std::move(rep));
    }

    bool any_fitted = false;
    for (const CriteriaRow& r : rows) any_fitted = any_fitted || r.fitted;
    if (!any_fitted) {
        throw no_solution_error("every configured family failed to fit: " + reports[0].error);
    }

    rank_criteria(rows);
    for (std::size_t i = 0; i < reports.size(); ++i) reports[i].row = rows[i];
    return reports;
}

std::vector<std::string> write_fit_reports(const RunConfig& cfg,
                                           const std::vector<FamilyReport>& reports,
                                           const LtrcSample& sample) {
    std::vector<std::string> written;

    if (cfg.wants("csv")) {
        std::string path;
        std::ofstream out = open_out(cfg, "fit_report.csv", path);
        write_config_comment(out, cfg);
        out << "family,theta_hat,alpha_hat,ks,ad,aic,bic,icomp,F_d_hat,F_u_hat\n";
        for (const FamilyReport& r : reports) {
            Family f = r.row.family;
            out << family_name(f) << ',';
            if (r.row.fitted) {
                out << fmt6(theta_of(f, r.row.params_hat)) << ','
                    << fmt6(alpha_of(f, r.row.params_hat)) << ',';
            } else {
                out << "NA,NA,";
            }
            out << fmt6(r.row.ks) << ',' << fmt6(r.row.ad) << ',' << fmt6(r.row.aic) << ','
                << fmt6(r.row.bic) << ',' << fmt_opt(r.row.icomp) << ',' << fmt6(r.f_d_hat)
                << ',' << fmt6(r.f_u_hat) << "\n";
        }
        written.push_back(path);

        std::ofstream rank = open_out(cfg, "fit_ranking.csv", path);
        write_config_comment(rank, cfg);
        rank << "family,criterion,value,delta,evidence,posterior\n";
        for (const FamilyReport& r : reports) {
            struct Col {
                const char* name;
                double value;
                const std::optional<DeltaEvidence>* de;
                const std::optional<double>* post;
            };
            const Col cols[] = {
                {"ks", r.row.ks, nullptr, nullptr},
                {"ad", r.row.ad, nullptr, nullptr},
                {"aic", r.row.aic, &r.row.aic_delta, &r.row.aic_posterior},
                {"bic", r.row.bic, &r.row.bic_delta, &r.row.bic_posterior},
                {"icomp", r.row.icomp ? *r.row.icomp : kNaN, &r.row.icomp_delta,
                 &r.row.icomp_posterior},
            };
            for (const Col& c : cols) {
                rank << family_name(r.row.family) << ',' << c.name << ',' << fmt6(c.value)
                     << ',';
                if (c.de && *c.de) {
                    rank << fmt6((**c.de).delta) << ',' << evidence_name((**c.de).grade);
                } else {
                    rank << "NA,NA";
                }
                rank << ',' << (c.post ? fmt_opt(*c.post) : "NA") << "\n";
            }
        }
        written.push_back(path);
    }

    if (cfg.wants("json")) {
        std::string path;
        std::ofstream out = open_out(cfg, "fit_report.json", path);
        ordered_json j;
        j["config"] = config_echo(cfg);
        j["n"] = sample.size();
        j["n_censored"] = sample.n_censored;
        ordered_json fams = ordered_json::array();
        for (const FamilyReport& r : reports) {
            Family f = r.row.family;
            ordered_json e;
            e["family"] = std::string(family_name(f));
            e["fitted"] = r.row.fitted;
            e["converged"] = r.converged;
            if (!r.error.empty()) e["error"] = r.error;
            if (r.row.fitted) {
                e[p1_name(f)] = r.row.params_hat.p1;
                e[p2_name(f)] = r.row.params_hat.p2;
                e["loglik"] = r.row.loglik;
            }
            e["ks"] = json_num(r.row.ks);
            e["ad"] = json_num(r.row.ad);
            e["aic"] = json_num(r.row.aic);
            e["bic"] = json_num(r.row.bic);
            e["icomp"] = r.row.icomp ? nlohmann::json(*r.row.icomp) : nullptr;
            e["F_d_hat"] = json_num(r.f_d_hat);
            e["F_u_hat"] = json_num(r.f_u_hat);
            e["aic_rank"] = delta_json(r.row.aic_delta);
            e["bic_rank"] = delta_json(r.row.bic_delta);
            e["icomp_rank"] = delta_json(r.row.icomp_delta);
            e["aic_posterior"] = r.row.aic_posterior ? nlohmann::json(*r.row.aic_posterior) : nullptr;
            e["bic_posterior"] = r.row.bic_posterior ? nlohmann::json(*r.row.bic_posterior) : nullptr;
            e["icomp_posterior"] =
                r.row.icomp_posterior ? nlohmann::json(*r.row.icomp_posterior) : nullptr;
            fams.push_back(std::move(e));
        }
        j["families"] = std::move(fams);
        out << j.dump(2) << "\n";
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> write_qq_files(const RunConfig& cfg, const LtrcSample& sample) {
    if (sample.n_uncensored() == 0) {
        throw data_error("no plottable points: the sample has no uncensored losses");
    }
    std::vector<std::string> written;
    for (Family f : cfg.families) {
        FitResult fit = fit_mle(f, sample, derive_seed(cfg.seed, static_cast<std::uint64_t>(f)));
        if (!std::isfinite(fit.loglik_max)) {
            throw no_solution_error(std::string("fit failed for family ") +
                                    std::string(family_name(f)));
        }
        auto pts = qq_points(f, fit.params_hat, sample.window, sample);
        std::string path;
        std::ofstream out =
            open_out(cfg, "qq_" + std::string(family_name(f)) + ".csv", path);
        write_config_comment(out, cfg);
        out << "log_theoretical,log_empirical\n";
        for (const auto& [lt, le] : pts) {
            out << fmt6(lt) << ',' << fmt6(le) << "\n";
        }
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> write_study_reports(const RunConfig& cfg,
                                             const SelectionStudyTable& table) {
    std::vector<std::string> written;

    if (cfg.wants("csv")) {
        std::string path;
        std::ofstream out = open_out(cfg, "study_report.csv", path);
        write_config_comment(out, cfg);
        out << "parent,parent_p1,parent_p2,criterion,n_effective";
        for (Family c : table.candidates) out << ",freq_" << family_name(c);
        for (Family c : table.candidates) out << ",mean_post_" << family_name(c);
        for (Family c : table.candidates) out << ",median_post_" << family_name(c);
        out << "\n";
        for (const ParentBlock& pb : table.parents) {
            for (std::size_t k = 0; k < all_criteria.size(); ++k) {
                out << family_name(pb.parent) << ',' << fmt6(pb.true_params.p1) << ','
                    << fmt6(pb.true_params.p2) << ',' << criterion_name(all_criteria[k]) << ','
                    << pb.by_criterion[k].n_effective;
                const CriterionSummary& cs = pb.by_criterion[k];
                for (std::size_t c = 0; c < table.candidates.size(); ++c) {
                    out << ',' << (c < cs.selection_freq.size() ? fmt6(cs.selection_freq[c]) : "NA");
                }
                for (std::size_t c = 0; c < table.candidates.size(); ++c) {
                    out << ',' << (c < cs.mean_posterior.size() ? fmt6(cs.mean_posterior[c]) : "NA");
                }
                for (std::size_t c = 0; c < table.candidates.size(); ++c) {
                    out << ','
                        << (c < cs.median_posterior.size() ? fmt6(cs.median_posterior[c]) : "NA");
                }
                out << "\n";
            }
        }
        written.push_back(path);
    }

    if (cfg.wants("json")) {
        std::string path;
        std::ofstream out = open_out(cfg, "study_report.json", path);
        ordered_json j;
        j["config"] = config_echo(cfg);
        std::vector<std::string> cand;
        for (Family c : table.candidates) cand.emplace_back(family_name(c));
        j["candidates"] = cand;
        j["n"] = table.n;
        j["replications"] = table.replications;
        ordered_json parents = ordered_json::array();
        for (const ParentBlock& pb : table.parents) {
            ordered_json p;
            p["parent"] = std::string(family_name(pb.parent));
            ordered_json tp;
            tp[p1_name(pb.parent)] = pb.true_params.p1;
            tp[p2_name(pb.parent)] = pb.true_params.p2;
            p["true_params"] = std::move(tp);
            p["n_valid"] = pb.n_valid;
            p["n_dropped"] = pb.n_dropped;
            ordered_json crits;
            for (std::size_t k = 0; k < all_criteria.size(); ++k) {
                const CriterionSummary& cs = pb.by_criterion[k];
                ordered_json c;
                c["n_effective"] = cs.n_effective;
                c["selection_freq"] = cs.selection_freq;
                if (!cs.mean_posterior.empty()) {
                    c["mean_posterior"] = cs.mean_posterior;
                    c["median_posterior"] = cs.median_posterior;
                }
                crits[std::string(criterion_name(all_criteria[k]))] = std::move(c);
            }
            p["by_criterion"] = std::move(crits);
            parents.push_back(std::move(p));
        }
        j["parents"] = std::move(parents);
        out << j.dump(2) << "\n";
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> export_study_samples(const RunConfig& cfg,
                                              const SelectionStudyTable& table) {
    std::vector<std::string> written;
    for (std::size_t pi = 0; pi < table.parents.size(); ++pi) {
        const ParentBlock& pb = table.parents[pi];
        // Replication 0's exact sample, so fits on the exported file can be
        // cross-checked against the study itself.
        LtrcSample s = sample_ltrc(pb.parent, pb.true_params, TruncCens{cfg.d, cfg.u}, cfg.n,
                                   derive_seed(cfg.seed, pi, 0, 0));
        std::string path;
        std::ofstream out =
            open_out(cfg, "sample_" + std::string(family_name(pb.parent)) + ".csv", path);
        out << "loss,censored\n";
        for (double x : s.uncensored) out << fmt_full(x) << ",0\n";
        for (std::size_t k = 0; k < s.n_censored; ++k) out << fmt_full(cfg.u) << ",1\n";
        written.push_back(path);
    }
    return written;
}

std::vector<std::string> write_calibration_reports(const RunConfig& cfg) {
    struct CalRow {
        Family family;
        bool ok = false;
        Params params{};
        std::string error;
    };
    std::vector<CalRow> rows;
    for (Family f : cfg.families) {
        CalRow r;
        r.family = f;
        try {
            r.params = percentile_match(f, cfg.d, cfg.p_d, cfg.u, cfg.p_u);
            r.ok = true;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        rows.push_back(std::move(r));
    }

    std::vector<std::string> written;
    if (cfg.wants("csv")) {
        std::string path;
        std::ofstream out = open_out(cfg, "calibration.csv", path);
        write_config_comment(out, cfg);
        out << "family,p1_name,p1,p2_name,p2,status\n";
        for (const CalRow& r : rows) {
            out << family_name(r.family) << ',' << p1_name(r.family) << ','
                << (r.ok ? fmt6(r.params.p1) : "NA") << ',' << p2_name(r.family) << ','
                << (r.ok ? fmt6(r.params.p2) : "NA") << ','
                << (r.ok ? "ok" : "no_solution") << "\n";
        }
        written.push_back(path);
    }
    if (cfg.wants("json")) {
        std::string path;
        std::ofstream out = open_out(cfg, "calibration.json", path);
        ordered_json j;
        j["config"] = config_echo(cfg);
        ordered_json fams = ordered_json::array();
        for (const CalRow& r : rows) {
            ordered_json e;
            e["family"] = std::string(family_name(r.family));
            e["status"] = r.ok ? "ok" : "no_solution";
            if (r.ok) {
                e[p1_name(r.family)] = r.params.p1;
                e[p2_name(r.family)] = r.params.p2;
            } else {
                e["error"] = r.error;
            }
            fams.push_back(std::move(e));
        }
        j["families"] = std::move(fams);
        out << j.dump(2) << "\n";
        written.push_back(path);
    }
    return written;
}

}  // namespace ltrc::cli
