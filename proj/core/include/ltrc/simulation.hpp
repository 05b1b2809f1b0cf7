#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ltrc/types.hpp"

namespace ltrc {

// Selection criteria tracked by the study engine, in report order.
enum class Criterion : int { ks = 0, ad, aic, bic, icomp };
inline constexpr std::array<Criterion, 5> all_criteria = {
    Criterion::ks, Criterion::ad, Criterion::aic, Criterion::bic, Criterion::icomp,
};
std::string_view criterion_name(Criterion c);

// Families used by default as both parents and candidates in selection
// studies (Frechet is excluded by default; pass it explicitly to include it).
const std::vector<Family>& default_study_families();

struct StudyConfig {
    std::vector<Family> parents = default_study_families();
    std::vector<Family> candidates = default_study_families();
    TruncCens window{500.0, 10000.0};
    double p_d = 0.10;   // target F(d) used to calibrate each parent
    double p_u = 0.85;   // target F(u)
    std::size_t n = 1000;
    std::size_t replications = 100;
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: LTRC_WORKERS env var if set, else hardware threads
};

// Draws one LTRC sample of n policies: each draw lands in the censored atom
// with probability 1 - censor_prob and otherwise inverts the conditional
// cdf. Identical (seed, n) give bit-identical samples on every platform.
LtrcSample sample_ltrc(Family f, const Params& prm, const TruncCens& w,
                       std::size_t n, std::uint64_t seed);

// Outcome of one replication: the winning candidate index per criterion
// (-1 when the criterion produced no finite value) and, for the likelihood
// criteria AIC/BIC/ICOMP, the per-candidate posterior probabilities with
// failed or NA candidates carrying zero mass. A replication where every
// candidate fit failed has valid == false and is dropped from summaries.
struct ReplicationRecord {
    bool valid = false;
    std::array<int, 5> winner = {-1, -1, -1, -1, -1};
    std::array<std::vector<double>, 3> posteriors;  // AIC, BIC, ICOMP
};

// Per-criterion column summary over the valid replications of one parent.
struct CriterionSummary {
    std::size_t n_effective = 0;          // replications with a winner
    std::vector<double> selection_freq;   // per candidate, sums to 1 over candidates
    std::vector<double> mean_posterior;   // likelihood criteria only, else empty
    std::vector<double> median_posterior;
};

struct ParentBlock {
    Family parent = Family::fisk;
    Params true_params;                   // calibrated to (p_d, p_u) on the window
    std::size_t n_valid = 0;
    std::size_t n_dropped = 0;
    std::array<CriterionSummary, 5> by_criterion;
};

struct SelectionStudyTable {
    std::vector<Family> candidates;
    std::size_t n = 0;
    std::size_t replications = 0;
    std::vector<ParentBlock> parents;
};

// Collapses raw replication records into the frequency and posterior
// summaries of one parent block (everything except parent identity, which
// the caller fills in).
ParentBlock summarize_table(const std::vector<ReplicationRecord>& records,
                            std::size_t n_candidates);

// Full selection study: calibrate each parent on the window, simulate
// `replications` samples per parent, fit every candidate to each sample and
// tally winners and posteriors per criterion. Deterministic for a given
// config regardless of worker count. Throws study_error when more than 5%
// of a parent's replications drop.
SelectionStudyTable run_study(const StudyConfig& cfg);

}  // namespace ltrc
