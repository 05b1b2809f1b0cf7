#include "ltrc/families.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ltrc/errors.hpp"
#include "ltrc/types.hpp"

namespace {

using namespace ltrc;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameters solved to 40 digits so every family has F(500)=0.10 and
// F(10000)=0.85, indexed by the Family enumeration order.
const Params kWindowParams[6] = {
    {1.312475639907500535, 2667.014706490920019},    // fisk
    {0.8849232835090957217, 1283.183452087253463},   // frechet
    {7.870867935993923770, 1.292386418230387616},    // lognormal
    {8.693579362900424003, 41006.84900438507868},    // lomax
    {1.238357761258556340, 3532.878030907946286},    // paralogistic
    {0.9649407898002187973, 5149.928243607625634},   // weibull
};

const TruncCens kWindow{500.0, 10000.0};

Params window_params(Family f) { return kWindowParams[static_cast<int>(f)]; }

TEST(Families, FiskPdfAtTheta) {
    // At x = theta the Fisk density reduces to alpha / (4 theta).
    Params prm{1.31, 2667.0};
    EXPECT_NEAR(pdf(Family::fisk, prm, 2667.0), 1.31 / (4.0 * 2667.0),
                1e-12 * (1.31 / (4.0 * 2667.0)));
}

TEST(Families, WeibullUnitShapeIsExponential) {
    Params prm{1.0, 5150.0};
    double x = 1e-4;
    double expected = std::exp(-x / 5150.0) / 5150.0;
    EXPECT_NEAR(pdf(Family::weibull, prm, x), expected, 1e-12 * expected);
    EXPECT_NEAR(pdf(Family::weibull, prm, x), 1.9417e-4, 1e-8);
}

TEST(Families, LomaxPdfReferenceValue) {
    Params prm{8.69, 41007.0};
    double expected = 1.884342952653078993710558705963275e-4;
    EXPECT_NEAR(pdf(Family::lomax, prm, 500.0), expected, 1e-12 * expected);
}

TEST(Families, CdfReferenceValues) {
    EXPECT_NEAR(cdf(Family::fisk, {1.31, 2667.0}, 500.0), 0.1003742748778116707764,
                1e-12);
    EXPECT_NEAR(cdf(Family::fisk, {1.31, 2667.0}, 500.0), 0.10, 5e-3);
    EXPECT_NEAR(cdf(Family::lognormal, {7.87, 1.29}, 10000.0), 0.8506031067275672995,
                1e-12);
    EXPECT_NEAR(cdf(Family::lognormal, {7.87, 1.29}, 10000.0), 0.85, 5e-3);
}

TEST(Families, FiskMedianIsTheta) {
    for (double a : {0.3, 0.46, 1.31, 2.8, 9.5}) {
        EXPECT_NEAR(cdf(Family::fisk, {a, 2667.0}, 2667.0), 0.5, 1e-14) << "alpha " << a;
        EXPECT_NEAR(qf(Family::fisk, {a, 2667.0}, 0.5), 2667.0, 1e-9 * 2667.0);
    }
}

TEST(Families, LognormalQfWindowAnchor) {
    EXPECT_NEAR(qf(Family::lognormal, {7.87, 1.29}, 0.85), 10000.0, 0.005 * 10000.0);
}

TEST(Families, QfCdfRoundtrips) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        for (double p = 1e-6; p < 1.0; p = (p < 0.5 ? p * 3.1 : 1.0 - (1.0 - p) / 3.1)) {
            double x = qf(f, prm, p);
            ASSERT_GT(x, 0.0);
            EXPECT_NEAR(cdf(f, prm, x), p, 1e-9 * p + 1e-15)
                << family_name(f) << " p=" << p;
            double x2 = qf(f, prm, cdf(f, prm, x));
            EXPECT_NEAR(x2, x, 1e-9 * x) << family_name(f) << " p=" << p;
            if (1.0 - p < 1e-6) break;
        }
        // The exact interval endpoints from the roundtrip invariant.
        for (double p : {1e-6, 1.0 - 1e-6}) {
            double x = qf(f, prm, p);
            EXPECT_NEAR(cdf(f, prm, x), p, 1e-9) << family_name(f);
        }
    }
}

TEST(Families, CdfMonotoneOnRandomGrids) {
    std::mt19937_64 eng(2024);
    std::uniform_real_distribution<double> ulog(std::log(1e-3), std::log(1e8));
    for (Family f : all_families) {
        Params prm = window_params(f);
        std::vector<double> xs(200);
        for (double& x : xs) x = std::exp(ulog(eng));
        std::sort(xs.begin(), xs.end());
        double prev = 0.0;
        for (double x : xs) {
            double c = cdf(f, prm, x);
            EXPECT_GE(c, prev) << family_name(f) << " x=" << x;
            EXPECT_GE(c, 0.0);
            EXPECT_LE(c, 1.0);
            prev = c;
        }
    }
}

TEST(Families, LtrcEndpoints) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        EXPECT_EQ(ltrc_cdf(f, prm, kWindow, kWindow.d), 0.0) << family_name(f);
        EXPECT_EQ(ltrc_cdf(f, prm, kWindow, 250.0), 0.0) << family_name(f);
        EXPECT_EQ(ltrc_cdf(f, prm, kWindow, kWindow.u), 1.0) << family_name(f);
        EXPECT_EQ(ltrc_cdf(f, prm, kWindow, 2e4), 1.0) << family_name(f);
        EXPECT_EQ(ltrc_qf(f, prm, kWindow, 0.0), kWindow.d) << family_name(f);
        double pu = censor_prob(f, prm, kWindow);
        EXPECT_EQ(ltrc_qf(f, prm, kWindow, pu), kWindow.u) << family_name(f);
        EXPECT_EQ(ltrc_qf(f, prm, kWindow, 1.0), kWindow.u) << family_name(f);
    }
}

TEST(Families, LtrcCdfMatchesGenericRatio) {
    std::mt19937_64 eng(77);
    std::uniform_real_distribution<double> ux(kWindow.d, kWindow.u);
    for (Family f : all_families) {
        Params prm = window_params(f);
        double fd = cdf(f, prm, kWindow.d);
        for (int i = 0; i < 50; ++i) {
            double x = ux(eng);
            double generic = (cdf(f, prm, x) - fd) / (1.0 - fd);
            EXPECT_NEAR(ltrc_cdf(f, prm, kWindow, x), generic, 1e-12)
                << family_name(f) << " x=" << x;
        }
    }
}

TEST(Families, FiskLtrcCdfClosedForm) {
    // (x^a - d^a) / (x^a + theta^a) from the Fisk-specific display.
    double a = 1.31, th = 2667.0, x = 2000.0;
    double closed = (std::pow(x, a) - std::pow(500.0, a)) /
                    (std::pow(x, a) + std::pow(th, a));
    EXPECT_NEAR(ltrc_cdf(Family::fisk, {a, th}, kWindow, x), closed, 1e-12);
}

TEST(Families, CensorProbTwoRoutes) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        double fd = cdf(f, prm, kWindow.d);
        double fu = cdf(f, prm, kWindow.u);
        double generic = (fu - fd) / (1.0 - fd);
        double cp = censor_prob(f, prm, kWindow);
        EXPECT_NEAR(cp, generic, 1e-12) << family_name(f);
        // The calibrated window has F(d)=0.10, F(u)=0.85 for every family.
        EXPECT_NEAR(cp, (0.85 - 0.10) / 0.90, 1e-9) << family_name(f);
        EXPECT_EQ(censor_prob(f, prm, TruncCens{500.0, kInf}), 1.0) << family_name(f);
    }
    // Fisk algebraic simplification (u^a - d^a) / (u^a + theta^a).
    double a = 1.31, th = 2667.0;
    double algebraic = (std::pow(1e4, a) - std::pow(500.0, a)) /
                       (std::pow(1e4, a) + std::pow(th, a));
    EXPECT_NEAR(censor_prob(Family::fisk, {a, th}, kWindow), algebraic, 1e-12);
}

TEST(Families, CensorProbIsLtrcCdfLeftLimit) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        double cp = censor_prob(f, prm, kWindow);
        double just_below = std::nextafter(kWindow.u, 0.0);
        EXPECT_NEAR(ltrc_cdf(f, prm, kWindow, just_below), cp, 1e-9) << family_name(f);
    }
}

TEST(Families, LtrcQfLomaxClosedForm) {
    double a = 8.69, th = 41007.0;
    Params prm{a, th};
    double p = 0.4;
    double closed = (500.0 + th) * std::pow(1.0 - p, -1.0 / a) - th;
    double got = ltrc_qf(Family::lomax, prm, kWindow, p);
    EXPECT_NEAR(got, closed, 1e-12 * closed);
}

TEST(Families, LtrcQfCdfRoundtrip) {
    std::mt19937_64 eng(5150);
    for (Family f : all_families) {
        Params prm = window_params(f);
        double pu = censor_prob(f, prm, kWindow);
        std::uniform_real_distribution<double> up(1e-6, pu * (1.0 - 1e-9));
        for (int i = 0; i < 60; ++i) {
            double p = up(eng);
            double x = ltrc_qf(f, prm, kWindow, p);
            ASSERT_GT(x, kWindow.d) << family_name(f);
            ASSERT_LT(x, kWindow.u) << family_name(f);
            EXPECT_NEAR(ltrc_cdf(f, prm, kWindow, x), p, 1e-9)
                << family_name(f) << " p=" << p;
        }
    }
}

TEST(Families, LoglikCompleteDataIsSumLogPdf) {
    std::vector<double> xs = {12.0, 310.5, 977.0, 2667.0, 5150.9, 41007.4, 1.2e5};
    LtrcSample s = make_ltrc_sample(xs, 0, TruncCens{0.0, kInf});
    for (Family f : all_families) {
        Params prm = window_params(f);
        double direct = 0.0;
        for (double x : xs) direct += log_pdf(f, prm, x);
        EXPECT_NEAR(loglik(f, prm, s), direct, 1e-9) << family_name(f);
    }
}

TEST(Families, LoglikAllCensoredClosedForm) {
    LtrcSample s = make_ltrc_sample({}, 7, kWindow);
    for (Family f : all_families) {
        Params prm = window_params(f);
        double expected = 7.0 * (log_sf(f, prm, kWindow.u) - log_sf(f, prm, kWindow.d));
        EXPECT_NEAR(loglik(f, prm, s), expected, 1e-9) << family_name(f);
        EXPECT_NEAR(loglik(f, prm, s),
                    7.0 * std::log(sf(f, prm, kWindow.u) / sf(f, prm, kWindow.d)), 1e-9)
            << family_name(f);
    }
}

// Deterministic sample through the conditional quantile function: no RNG,
// mixes interior points with a censored block.
LtrcSample quantile_sample(Family f, const Params& prm, std::size_t n) {
    double pu = censor_prob(f, prm, kWindow);
    std::vector<double> unc;
    std::size_t n_cens = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double p = (i + 0.5) / static_cast<double>(n);
        if (p >= pu) {
            ++n_cens;
        } else {
            unc.push_back(ltrc_qf(f, prm, kWindow, p));
        }
    }
    return make_ltrc_sample(std::move(unc), n_cens, kWindow);
}

TEST(Families, LoglikGenericRouteAgreesPerFamily) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        LtrcSample s = quantile_sample(f, prm, 400);
        double generic = 0.0;
        for (double x : s.uncensored) generic += log_pdf(f, prm, x);
        generic -= static_cast<double>(s.size()) * log_sf(f, prm, kWindow.d);
        generic += static_cast<double>(s.n_censored) * log_sf(f, prm, kWindow.u);
        EXPECT_NEAR(loglik(f, prm, s), generic, 1e-9) << family_name(f);
        // Cross-family scoring exercises the kernels away from the optimum.
        for (Family g : all_families) {
            Params q = window_params(g);
            double gen = 0.0;
            for (double x : s.uncensored) gen += log_pdf(g, q, x);
            gen -= static_cast<double>(s.size()) * log_sf(g, q, kWindow.d);
            gen += static_cast<double>(s.n_censored) * log_sf(g, q, kWindow.u);
            EXPECT_NEAR(loglik(g, q, s), gen, 1e-9)
                << family_name(g) << " scoring " << family_name(f) << " data";
        }
    }
}

TEST(Families, FiskLoglikExplicitHForm) {
    // The Fisk-specific expression with H(x) = x^a + theta^a.
    Params prm = window_params(Family::fisk);
    double a = prm.p1, th = prm.p2;
    LtrcSample s = quantile_sample(Family::fisk, prm, 300);
    auto H = [&](double x) { return std::pow(x, a) + std::pow(th, a); };
    double ll = 0.0;
    for (double x : s.uncensored) {
        ll += std::log(a) + a * std::log(th) + (a - 1.0) * std::log(x) -
              2.0 * std::log(H(x));
    }
    ll += static_cast<double>(s.n_censored) *
          std::log(std::pow(th, a) / H(kWindow.u));
    ll -= static_cast<double>(s.size()) * std::log(std::pow(th, a) / H(kWindow.d));
    EXPECT_NEAR(loglik(Family::fisk, prm, s), ll, 1e-9);
}

TEST(Families, PreparedSampleMatchesDirectStats) {
    Params prm = window_params(Family::weibull);
    LtrcSample s = quantile_sample(Family::weibull, prm, 250);
    PreparedSample prep(s);
    EXPECT_EQ(prep.n_unc, s.n_uncensored());
    EXPECT_EQ(prep.n_cens, s.n_censored);
    double sum = 0.0;
    for (double x : s.uncensored) sum += std::log(x);
    EXPECT_NEAR(prep.sum_log_x, sum, 1e-9 * std::abs(sum));
    double mean = sum / static_cast<double>(s.n_uncensored());
    EXPECT_NEAR(prep.mean_log_x, mean, 1e-12 * std::abs(mean));
    double m2 = 0.0;
    for (double x : s.uncensored) {
        double dev = std::log(x) - mean;
        m2 += dev * dev;
    }
    EXPECT_NEAR(prep.m2_log_x, m2, 1e-9 * m2);
    for (Family f : all_families) {
        EXPECT_EQ(loglik(f, window_params(f), prep), loglik(f, window_params(f), s));
    }
}

TEST(Families, LoglikSentinels) {
    LtrcSample cens = make_ltrc_sample({}, 4, TruncCens{1e62, 2e62});
    // (d / theta)^alpha overflows: S(d) is an exact zero in log space.
    EXPECT_EQ(loglik(Family::weibull, {5.0, 1.0}, cens), -kInf);
    LtrcSample s = make_ltrc_sample({700.0, 900.0}, 0, kWindow);
    EXPECT_EQ(loglik(Family::weibull, {1.0, 1e-260}, s), -kInf);
    EXPECT_EQ(loglik(Family::weibull, {1.0, 1e260}, s), -kInf);
}

TEST(Families, PdfIntegratesToOne) {
    for (Family f : all_families) {
        Params prm = window_params(f);
        // Integrate pdf(e^t) e^t dt by composite Simpson on a log grid.
        double lo = std::log(qf(f, prm, 1e-12));
        double hi = std::log(qf(f, prm, 1.0 - 1e-8));
        const int n = 40000;  // even
        double h = (hi - lo) / n;
        auto g = [&](double t) { return pdf(f, prm, std::exp(t)) * std::exp(t); };
        double acc = g(lo) + g(hi);
        for (int i = 1; i < n; ++i) acc += g(lo + i * h) * (i % 2 ? 4.0 : 2.0);
        double integral = acc * h / 3.0;
        EXPECT_GE(integral, 1.0 - 1e-6) << family_name(f);
        EXPECT_LE(integral, 1.0 + 1e-6) << family_name(f);
    }
}

TEST(Families, DomainErrors) {
    Params ok{1.0, 1.0};
    EXPECT_THROW(pdf(Family::fisk, ok, 0.0), std::domain_error);
    EXPECT_THROW(pdf(Family::fisk, ok, -3.0), std::domain_error);
    EXPECT_THROW(cdf(Family::weibull, ok, 0.0), std::domain_error);
    EXPECT_THROW(qf(Family::lomax, ok, 0.0), std::domain_error);
    EXPECT_THROW(qf(Family::lomax, ok, 1.0), std::domain_error);
    EXPECT_THROW(qf(Family::lomax, ok, -0.1), std::domain_error);
    EXPECT_THROW(pdf(Family::fisk, {0.0, 1.0}, 1.0), std::invalid_argument);
    EXPECT_THROW(pdf(Family::fisk, {1.0, 0.0}, 1.0), std::invalid_argument);
    EXPECT_THROW(pdf(Family::fisk, {1.0, -2.0}, 1.0), std::invalid_argument);
    double nan = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(pdf(Family::weibull, {nan, 1.0}, 1.0), std::invalid_argument);
    // Lognormal location may be any real.
    EXPECT_NO_THROW(pdf(Family::lognormal, {-4.5, 1.0}, 1.0));
    EXPECT_THROW(pdf(Family::lognormal, {0.0, 0.0}, 1.0), std::invalid_argument);
}

TEST(Families, DegenerateWindowThrows) {
    // S(d) = Phi(-8) ~ 6e-16 < 1e-12: truncation removes essentially all mass.
    Params prm{0.0, 0.25};
    TruncCens w{std::exp(2.0), 10.0};
    EXPECT_THROW(ltrc_cdf(Family::lognormal, prm, w, 8.0), degenerate_window_error);
    EXPECT_THROW(censor_prob(Family::lognormal, prm, w), degenerate_window_error);
    EXPECT_THROW(ltrc_qf(Family::lognormal, prm, w, 0.3), degenerate_window_error);
}

TEST(Families, FamilyNamesRoundtrip) {
    for (Family f : all_families) {
        EXPECT_EQ(family_from_string(std::string(family_name(f))), f);
    }
    EXPECT_EQ(family_from_string("Fisk"), Family::fisk);
    EXPECT_EQ(family_from_string("LOGNORMAL"), Family::lognormal);
    EXPECT_THROW(family_from_string("cauchy"), std::invalid_argument);
}

}  // namespace
