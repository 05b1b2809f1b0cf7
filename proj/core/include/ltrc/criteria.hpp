#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ltrc/estimation.hpp"
#include "ltrc/types.hpp"

namespace ltrc {

double aic(double loglik, int n_params);
double bic(double loglik, int n_params, std::size_t n_obs);

// ICOMP with the inverse-Fisher complexity penalty: -2 loglik plus
// s log(trace(Sigma)/s) - log det(Sigma) for the s x s covariance Sigma
// (s = 2 here). NA covariance, or one that is not positive definite,
// yields NA.
std::optional<double> icomp(double loglik, const std::optional<SymMat2>& covariance);

// Strength-of-evidence bands for a criterion difference Delta against the
// best candidate.
enum class EvidenceGrade { little, positive, strong, very_strong };

std::string_view evidence_name(EvidenceGrade g);
EvidenceGrade grade_of(double delta);

struct DeltaEvidence {
    double delta = 0.0;
    EvidenceGrade grade = EvidenceGrade::little;
};

// Differences to the per-criterion minimum plus their evidence grades.
// NA inputs stay NA; throws std::invalid_argument when every entry is NA.
std::vector<std::optional<DeltaEvidence>> deltas_and_evidence(
    const std::vector<std::optional<double>>& values);

// Model posterior probabilities exp(-Delta_i/2) / sum_j exp(-Delta_j/2)
// over finite deltas. The input must be non-empty and finite.
std::vector<double> posterior_probs(const std::vector<double>& deltas);

// Per-family summary row for a fitted-model comparison table. Value fields
// are filled by the caller; rank_criteria fills the delta/grade/posterior
// fields for the AIC, BIC and ICOMP columns (NA entries are excluded and
// the posteriors renormalised over the rest).
struct CriteriaRow {
    Family family = Family::fisk;
    bool fitted = false;              // false when the fit itself failed
    Params params_hat;
    double loglik = 0.0;
    double ks = 0.0;
    double ad = 0.0;
    double aic = 0.0;
    double bic = 0.0;
    std::optional<double> icomp;

    std::optional<DeltaEvidence> aic_delta;
    std::optional<DeltaEvidence> bic_delta;
    std::optional<DeltaEvidence> icomp_delta;
    std::optional<double> aic_posterior;
    std::optional<double> bic_posterior;
    std::optional<double> icomp_posterior;
};

// Fills the comparison fields across rows (rows with fitted == false count
// as NA everywhere). Throws std::invalid_argument if no row is fitted.
void rank_criteria(std::vector<CriteriaRow>& rows);

}  // namespace ltrc
