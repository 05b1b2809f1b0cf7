#pragma once

#include <string>
#include <vector>

#include "ltrc/criteria.hpp"
#include "ltrc/simulation.hpp"
#include "ltrc/types.hpp"
#include "options.hpp"

namespace ltrc::cli {

// One family's full fit outcome for the report tables.
struct FamilyReport {
    CriteriaRow row;            // params, loglik, KS, AD, AIC, BIC, ICOMP + ranks
    bool converged = false;
    double f_d_hat = 0.0;       // fitted ground-up F(d)
    double f_u_hat = 0.0;       // fitted ground-up F(u)
    std::string error;          // non-empty when the fit itself raised
};

// Fits every configured family to the sample and fills the comparison
// columns. Per-family fit failures are recorded in the row, not thrown.
std::vector<FamilyReport> run_fit_pipeline(const RunConfig& cfg, const LtrcSample& sample);

// fit_report.csv / fit_ranking.csv / fit_report.json per cfg.formats.
// Returns the paths written.
std::vector<std::string> write_fit_reports(const RunConfig& cfg,
                                           const std::vector<FamilyReport>& reports,
                                           const LtrcSample& sample);

// qq_<family>.csv for each family: fits the family, then emits the log-log
// quantile pairs. Throws data_error("no plottable points") when the sample
// has no uncensored losses and propagates fit failures.
std::vector<std::string> write_qq_files(const RunConfig& cfg, const LtrcSample& sample);

// study_report.csv / study_report.json per cfg.formats.
std::vector<std::string> write_study_reports(const RunConfig& cfg,
                                             const SelectionStudyTable& table);

// sample_<parent>.csv per parent: the replication-0 sample of each parent,
// full precision, ingestible by the fit command with the same d and u.
std::vector<std::string> export_study_samples(const RunConfig& cfg,
                                              const SelectionStudyTable& table);

// calibration.csv / calibration.json per cfg.formats. Families that admit
// no solution are reported in-band; nothing throws per family.
std::vector<std::string> write_calibration_reports(const RunConfig& cfg);

}  // namespace ltrc::cli
