#pragma once

#include <cstddef>
#include <vector>

#include "ltrc/types.hpp"

namespace ltrc {

// Ground-up (untruncated, uncensored) distribution functions. All of them
// require valid params; pdf/log_pdf/cdf/sf additionally require x > 0 and
// qf requires p in (0, 1). Violations throw std::domain_error (invalid
// params throw std::invalid_argument).
double pdf(Family f, const Params& prm, double x);
double log_pdf(Family f, const Params& prm, double x);
double cdf(Family f, const Params& prm, double x);
double sf(Family f, const Params& prm, double x);       // 1 - cdf, computed stably
double log_sf(Family f, const Params& prm, double x);
double qf(Family f, const Params& prm, double p);

// Conditional cdf of a loss observed through the window: zero at and below
// d, one at and above u, (F(x) - F(d)) / (1 - F(d)) between. Throws
// degenerate_window_error when F(d) >= 1 - 1e-12 under this model.
double ltrc_cdf(Family f, const Params& prm, const TruncCens& w, double x);

// P(observed loss is uncensored) = (F(u) - F(d)) / (1 - F(d)); equals 1 when
// the window has no censoring. Same degenerate-window behaviour as ltrc_cdf.
double censor_prob(Family f, const Params& prm, const TruncCens& w);

// Quantile of the conditional distribution: returns d at p = 0, u for
// p >= censor_prob (the censored atom), and the unique interior root
// otherwise. Requires p in [0, 1].
double ltrc_qf(Family f, const Params& prm, const TruncCens& w, double p);

// Precomputed per-sample quantities so repeated likelihood evaluations over
// the same sample cost one pass of vectorised transcendentals (none at all
// for Lognormal). Likelihood maximisation and the Hessian builder use this.
struct PreparedSample {
    explicit PreparedSample(const LtrcSample& s);

    std::vector<double> x;      // uncensored losses, ascending
    std::vector<double> log_x;  // log of each loss
    double sum_log_x = 0.0;
    double mean_log_x = 0.0;
    double m2_log_x = 0.0;      // centred sum of squares of log losses
    std::size_t n_unc = 0;
    std::size_t n_cens = 0;
    double d = 0.0;
    double u = 0.0;  // +inf when no censoring
    std::size_t n() const { return n_unc + n_cens; }
};

// LTRC log-likelihood: sum of log f over uncensored losses, minus n log S(d),
// plus n_censored log S(u). Returns -inf whenever the likelihood degenerates
// at these params (zero density, S(d) or S(u) underflowing, overflow), which
// lets the optimiser probe freely. Params must still be structurally valid.
double loglik(Family f, const Params& prm, const PreparedSample& prep);
double loglik(Family f, const Params& prm, const LtrcSample& sample);

}  // namespace ltrc
