#include "ltrc/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ltrc/calibration.hpp"
#include "ltrc/criteria.hpp"
#include "ltrc/errors.hpp"
#include "ltrc/estimation.hpp"
#include "ltrc/families.hpp"
#include "ltrc/gof.hpp"
#include "ltrc/rng.hpp"

namespace ltrc {

namespace {

constexpr std::size_t kNCriteria = 5;

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LTRC_WORKERS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 4096) {
            return static_cast<unsigned>(v);
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// One replication: fit every candidate, score it, pick winners and
// posterior vectors per criterion. Failed candidates count as NA.
ReplicationRecord evaluate_replication(const LtrcSample& sample,
                                       const std::vector<Family>& candidates,
                                       std::uint64_t base_seed, std::uint64_t parent_idx,
                                       std::uint64_t rep_idx) {
    const std::size_t nc = candidates.size();
    std::vector<std::optional<double>> vals[kNCriteria];
    for (auto& v : vals) v.assign(nc, std::nullopt);

    bool any_fitted = false;
    for (std::size_t ci = 0; ci < nc; ++ci) {
        FitResult fit;
        try {
            fit = fit_mle(candidates[ci], sample, derive_seed(base_seed, parent_idx, rep_idx, ci + 1));
        } catch (const std::exception&) {
            continue;
        }
        if (!std::isfinite(fit.loglik_max)) continue;
        any_fitted = true;
        try {
            vals[0][ci] = ks_stat(fit.family, fit.params_hat, sample.window, sample);
            double ad = ad_stat(fit.family, fit.params_hat, sample.window, sample);
            if (std::isfinite(ad)) vals[1][ci] = ad;
        } catch (const std::exception&) {
            // Degenerate window under the fitted params: distance criteria NA.
        }
        vals[2][ci] = aic(fit.loglik_max, 2);
        vals[3][ci] = bic(fit.loglik_max, 2, sample.size());
        if (auto ic = icomp(fit.loglik_max, fit.covariance)) vals[4][ci] = *ic;
    }

    ReplicationRecord rec;
    rec.valid = any_fitted;
    if (!any_fitted) return rec;

    for (std::size_t c = 0; c < kNCriteria; ++c) {
        int best = -1;
        for (std::size_t ci = 0; ci < nc; ++ci) {
            if (vals[c][ci] &&
                (best < 0 || *vals[c][ci] < *vals[c][static_cast<std::size_t>(best)])) {
                best = static_cast<int>(ci);
            }
        }
        rec.winner[c] = best;
    }
    // Posterior vectors for the likelihood criteria; NA candidates are
    // excluded from the renormalisation and carry zero mass.
    for (std::size_t slot = 0; slot < 3; ++slot) {
        const auto& col = vals[slot + 2];
        if (std::none_of(col.begin(), col.end(), [](const auto& v) { return v.has_value(); })) {
            continue;
        }
        auto des = deltas_and_evidence(col);
        std::vector<double> finite;
        for (const auto& de : des) {
            if (de) finite.push_back(de->delta);
        }
        std::vector<double> p = posterior_probs(finite);
        rec.posteriors[slot].assign(nc, 0.0);
        std::size_t k = 0;
        for (std::size_t ci = 0; ci < nc; ++ci) {
            if (des[ci]) rec.posteriors[slot][ci] = p[k++];
        }
    }
    return rec;
}

}  // namespace

std::string_view criterion_name(Criterion c) {
    switch (c) {
        case Criterion::ks: return "ks";
        case Criterion::ad: return "ad";
        case Criterion::aic: return "aic";
        case Criterion::bic: return "bic";
        case Criterion::icomp: return "icomp";
    }
    throw std::invalid_argument("unknown Criterion enumerator");
}

const std::vector<Family>& default_study_families() {
    static const std::vector<Family> fams = {Family::fisk, Family::lognormal, Family::lomax,
                                             Family::paralogistic, Family::weibull};
    return fams;
}

LtrcSample sample_ltrc(Family f, const Params& prm, const TruncCens& w, std::size_t n,
                       std::uint64_t seed) {
    require_valid_params(f, prm);
    require_valid_window(w);
    const double p_u = censor_prob(f, prm, w);
    UniformOpen01 uni(seed);
    std::vector<double> xs;
    xs.reserve(n);
    std::size_t n_cens = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = uni.next();
        if (p >= p_u) {
            ++n_cens;
        } else {
            xs.push_back(ltrc_qf(f, prm, w, p));
        }
    }
    return make_ltrc_sample(std::move(xs), n_cens, w);
}

ParentBlock summarize_table(const std::vector<ReplicationRecord>& records,
                            std::size_t n_candidates) {
    ParentBlock pb;
    std::vector<const ReplicationRecord*> valid;
    valid.reserve(records.size());
    for (const auto& r : records) {
        if (r.valid) valid.push_back(&r);
    }
    pb.n_valid = valid.size();
    pb.n_dropped = records.size() - valid.size();

    for (std::size_t c = 0; c < kNCriteria; ++c) {
        CriterionSummary& cs = pb.by_criterion[c];
        cs.selection_freq.assign(n_candidates, 0.0);
        std::size_t n_eff = 0;
        for (const auto* r : valid) {
            if (r->winner[c] >= 0) {
                ++n_eff;
                cs.selection_freq[static_cast<std::size_t>(r->winner[c])] += 1.0;
            }
        }
        cs.n_effective = n_eff;
        if (n_eff > 0) {
            for (double& v : cs.selection_freq) v /= static_cast<double>(n_eff);
        }
        if (c < 2) continue;

        const std::size_t slot = c - 2;
        std::vector<const std::vector<double>*> cols;
        for (const auto* r : valid) {
            if (!r->posteriors[slot].empty()) cols.push_back(&r->posteriors[slot]);
        }
        if (cols.empty()) continue;
        cs.mean_posterior.assign(n_candidates, 0.0);
        cs.median_posterior.assign(n_candidates, 0.0);
        std::vector<double> column(cols.size());
        for (std::size_t ci = 0; ci < n_candidates; ++ci) {
            double total = 0.0;
            for (std::size_t v = 0; v < cols.size(); ++v) {
                column[v] = (*cols[v])[ci];
                total += column[v];
            }
            cs.mean_posterior[ci] = total / static_cast<double>(cols.size());
            std::sort(column.begin(), column.end());
            std::size_t m = column.size();
            cs.median_posterior[ci] = m % 2 == 1
                                          ? column[m / 2]
                                          : 0.5 * (column[m / 2 - 1] + column[m / 2]);
        }
    }
    return pb;
}

SelectionStudyTable run_study(const StudyConfig& cfg) {
    require_valid_window(cfg.window);
    if (!cfg.window.has_censoring()) {
        throw std::invalid_argument("run_study needs a finite policy limit u for calibration");
    }
    if (cfg.parents.empty() || cfg.candidates.empty()) {
        throw std::invalid_argument("run_study needs at least one parent and one candidate");
    }
    if (cfg.replications == 0 || cfg.n < 3) {
        throw std::invalid_argument("run_study needs replications >= 1 and n >= 3");
    }
    if (!(cfg.p_d > 0.0 && cfg.p_d < cfg.p_u && cfg.p_u < 1.0)) {
        throw std::invalid_argument("run_study needs 0 < p_d < p_u < 1");
    }

    const std::size_t np = cfg.parents.size();
    const std::size_t reps = cfg.replications;
    std::vector<Params> true_params(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
        true_params[pi] =
            percentile_match(cfg.parents[pi], cfg.window.d, cfg.p_d, cfg.window.u, cfg.p_u);
    }

    std::vector<std::vector<ReplicationRecord>> records(np);
    for (auto& v : records) v.resize(reps);

    const std::size_t total = np * reps;
    auto run_task = [&](std::size_t g) {
        std::size_t pi = g / reps;
        std::size_t r = g % reps;
        LtrcSample sample = sample_ltrc(cfg.parents[pi], true_params[pi], cfg.window, cfg.n,
                                        derive_seed(cfg.seed, pi, r, 0));
        records[pi][r] = evaluate_replication(sample, cfg.candidates, cfg.seed, pi, r);
    };

    unsigned workers = std::min<std::size_t>(resolve_workers(cfg.workers), total);
    if (workers <= 1) {
        for (std::size_t g = 0; g < total; ++g) run_task(g);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t g = t; g < total; g += workers) run_task(g);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    SelectionStudyTable table;
    table.candidates = cfg.candidates;
    table.n = cfg.n;
    table.replications = reps;
    table.parents.reserve(np);
    for (std::size_t pi = 0; pi < np; ++pi) {
        ParentBlock pb = summarize_table(records[pi], cfg.candidates.size());
        pb.parent = cfg.parents[pi];
        pb.true_params = true_params[pi];
        if (static_cast<double>(pb.n_dropped) >
            0.05 * static_cast<double>(reps)) {
            throw study_error("more than 5% of replications dropped for parent " +
                              std::string(family_name(cfg.parents[pi])));
        }
        table.parents.push_back(pb);
    }
    return table;
}

}  // namespace ltrc
