#include <gtest/gtest.h>

#include <cmath>

#include "ltrc/estimation.hpp"
#include "ltrc/families.hpp"
#include "ltrc/rng.hpp"
#include "ltrc/simulation.hpp"

namespace {

using namespace ltrc;

// Large-sample consistency: at n = 100,000 the MLE of the generating family
// lands within a few asymptotic standard deviations of the true parameters
// in at least 19 of 20 replicates. Tolerances follow the Cramer-Rao bound
// through the 500..10000 window: four families have relative sds below
// 0.7%, so 5% is a loose multi-sigma envelope; Lomax is weakly identified
// near its exponential limit (relative sds about 6.4% and 7.0%, parameter
// correlation 0.9985), so its envelope is 20% (about 2.9 sigma).
TEST(EstimationSlow, ConsistencyAtScale) {
    const TruncCens window{500.0, 10000.0};
    const Params truth[6] = {
        {1.312475639907500535, 2667.014706490920019},
        {0.8849232835090957217, 1283.183452087253463},
        {7.870867935993923770, 1.292386418230387616},
        {8.693579362900424070, 41006.84900438507903},
        {1.238357761258556340, 3532.878030907946286},
        {0.9649407898002187973, 5149.928243607625634},
    };
    const std::size_t n = 100000;
    const int trials = 20;
    for (Family f : default_study_families()) {
        Params t = truth[static_cast<int>(f)];
        double tol = (f == Family::lomax) ? 0.20 : 0.05;
        int hits = 0;
        for (int rep = 0; rep < trials; ++rep) {
            std::uint64_t sample_seed = derive_seed(2026, static_cast<std::uint64_t>(f),
                                                    static_cast<std::uint64_t>(rep), 0);
            LtrcSample s = sample_ltrc(f, t, window, n, sample_seed);
            FitResult r = fit_mle(f, s, derive_seed(sample_seed, 1));
            bool ok = r.converged &&
                      std::abs(r.params_hat.p1 - t.p1) <= tol * std::abs(t.p1) &&
                      std::abs(r.params_hat.p2 - t.p2) <= tol * std::abs(t.p2);
            hits += ok ? 1 : 0;
        }
        EXPECT_GE(hits, 19) << family_name(f);
    }
}

}  // namespace
