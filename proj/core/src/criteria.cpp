#include "ltrc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ltrc {

double aic(double loglik, int n_params) { return -2.0 * loglik + 2.0 * n_params; }

double bic(double loglik, int n_params, std::size_t n_obs) {
    return -2.0 * loglik + static_cast<double>(n_params) * std::log(static_cast<double>(n_obs));
}

std::optional<double> icomp(double loglik, const std::optional<SymMat2>& covariance) {
    if (!covariance) return std::nullopt;
    std::array<double, 2> eig = covariance->eigenvalues();
    if (!(eig[0] > 0.0) || !std::isfinite(eig[1])) return std::nullopt;
    // s log(tr/s) - log det, written through the eigenvalues so the
    // complexity term cancels to exactly zero when they are equal.
    double complexity =
        2.0 * std::log((eig[0] + eig[1]) / 2.0) - std::log(eig[0]) - std::log(eig[1]);
    return -2.0 * loglik + complexity;
}

std::string_view evidence_name(EvidenceGrade g) {
    switch (g) {
        case EvidenceGrade::little: return "little";
        case EvidenceGrade::positive: return "positive";
        case EvidenceGrade::strong: return "strong";
        case EvidenceGrade::very_strong: return "very strong";
    }
    throw std::invalid_argument("unknown EvidenceGrade enumerator");
}

EvidenceGrade grade_of(double delta) {
    if (delta <= 2.0) return EvidenceGrade::little;
    if (delta <= 6.0) return EvidenceGrade::positive;
    if (delta <= 10.0) return EvidenceGrade::strong;
    return EvidenceGrade::very_strong;
}

std::vector<std::optional<DeltaEvidence>> deltas_and_evidence(
    const std::vector<std::optional<double>>& values) {
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& v : values) {
        if (v) {
            best = std::min(best, *v);
            any = true;
        }
    }
    if (!any) {
        throw std::invalid_argument("deltas_and_evidence: every candidate value is NA");
    }
    std::vector<std::optional<DeltaEvidence>> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i]) {
            double d = *values[i] - best;
            out[i] = DeltaEvidence{d, grade_of(d)};
        }
    }
    return out;
}

std::vector<double> posterior_probs(const std::vector<double>& deltas) {
    if (deltas.empty()) {
        throw std::invalid_argument("posterior_probs: empty delta list");
    }
    // Shift by the minimum before exponentiating; with deltas to the best
    // model the minimum is 0, but the shift keeps direct calls safe too.
    double lo = *std::min_element(deltas.begin(), deltas.end());
    std::vector<double> out(deltas.size());
    double total = 0.0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (!std::isfinite(deltas[i])) {
            throw std::invalid_argument("posterior_probs: deltas must be finite");
        }
        out[i] = std::exp(-0.5 * (deltas[i] - lo));
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

void rank_criteria(std::vector<CriteriaRow>& rows) {
    auto column = [&](auto getter) {
        std::vector<std::optional<double>> vals(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].fitted) vals[i] = getter(rows[i]);
        }
        return vals;
    };
    auto posteriors_of = [&](const std::vector<std::optional<DeltaEvidence>>& des) {
        // Softmax over the non-NA deltas, mapped back with NA preserved.
        std::vector<double> finite;
        for (const auto& de : des) {
            if (de) finite.push_back(de->delta);
        }
        std::vector<double> p = posterior_probs(finite);
        std::vector<std::optional<double>> out(des.size());
        std::size_t k = 0;
        for (std::size_t i = 0; i < des.size(); ++i) {
            if (des[i]) out[i] = p[k++];
        }
        return out;
    };

    auto aic_vals = column([](const CriteriaRow& r) { return std::optional<double>(r.aic); });
    auto bic_vals = column([](const CriteriaRow& r) { return std::optional<double>(r.bic); });
    auto icomp_vals = column([](const CriteriaRow& r) { return r.icomp; });

    auto aic_de = deltas_and_evidence(aic_vals);
    auto bic_de = deltas_and_evidence(bic_vals);
    auto aic_post = posteriors_of(aic_de);
    auto bic_post = posteriors_of(bic_de);

    bool any_icomp = std::any_of(icomp_vals.begin(), icomp_vals.end(),
                                 [](const auto& v) { return v.has_value(); });
    std::vector<std::optional<DeltaEvidence>> icomp_de(rows.size());
    std::vector<std::optional<double>> icomp_post(rows.size());
    if (any_icomp) {
        icomp_de = deltas_and_evidence(icomp_vals);
        icomp_post = posteriors_of(icomp_de);
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        rows[i].aic_delta = aic_de[i];
        rows[i].bic_delta = bic_de[i];
        rows[i].icomp_delta = icomp_de[i];
        rows[i].aic_posterior = aic_post[i];
        rows[i].bic_posterior = bic_post[i];
        rows[i].icomp_posterior = icomp_post[i];
    }
}

}  // namespace ltrc
