// End-to-end acceptance gate. Each criterion prints one line
//   [ACCEPTANCE] criterion N: PASS|FAIL
// and the process exits with the number of failed criteria. Detail lines
// are indented beneath each verdict.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ad_oracle.hpp"
#include "ltrc/criteria.hpp"
#include "ltrc/estimation.hpp"
#include "ltrc/families.hpp"
#include "ltrc/gof.hpp"
#include "ltrc/simulation.hpp"
#include "ltrc/types.hpp"

#ifndef LTRC_CLI_PATH
#error "LTRC_CLI_PATH must point at the ltrc binary"
#endif

namespace {

using namespace ltrc;

constexpr double kInf = std::numeric_limits<double>::infinity();
const TruncCens kWindow{500.0, 10000.0};

// Window-calibrated parameters at (0.10, 0.85), indexed by Family.
const Params kWindowParams[6] = {
    {1.312475639907500535, 2667.014706490920019},
    {0.8849232835090957217, 1283.183452087253463},
    {7.870867935993923770, 1.292386418230387616},
    {8.693579362900424070, 41006.84900438507903},
    {1.238357761258556340, 3532.878030907946286},
    {0.9649407898002187973, 5149.928243607625634},
};

bool run_shell(const std::string& cmd) {
    int status = std::system((cmd + " >/dev/null 2>&1").c_str());
    return status == 0;
}

std::string cli() { return std::string(LTRC_CLI_PATH); }

std::string make_temp_dir() {
    char tmpl[] = "/tmp/ltrc_accept_XXXXXX";
    char* dir = mkdtemp(tmpl);
    if (!dir) {
        std::cerr << "cannot create temp dir\n";
        std::exit(70);
    }
    return std::string(dir);
}

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Check {
    bool ok = true;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back("FAILED: " + what);
        }
    }
    void note(const std::string& what) { notes.push_back(what); }
};

// ---------------------------------------------------------------------------
// Criterion 1: the calibrate command reproduces the published parameter
// pairs for both observation scenarios within 1% relative.
// ---------------------------------------------------------------------------
void criterion_1(Check& c) {
    struct Anchor {
        const char* family;
        double p1, p2;
    };
    const Anchor scenario1[] = {
        {"fisk", 1.31, 2667.0},   {"lognormal", 7.87, 1.29},
        {"lomax", 8.69, 41007.0}, {"paralogistic", 1.24, 3533.0},
        {"weibull", 0.96, 5150.0},
    };
    const Anchor scenario2[] = {
        {"fisk", 0.46, 500.0},   {"lognormal", 6.21, 3.56},
        {"lomax", 0.32, 63.91},  {"paralogistic", 0.61, 144.04},
        {"weibull", 0.28, 1840.88},
    };

    std::string dir = make_temp_dir();
    c.expect(run_shell(cli() + " calibrate --out " + dir + "/s1"),
             "calibrate (0.10, 0.85) exits 0");
    c.expect(run_shell(cli() + " calibrate --p-d 0.50 --p-u 0.80 --out " + dir + "/s2"),
             "calibrate (0.50, 0.80) exits 0");

    auto check_scenario = [&](const std::string& sub, const Anchor* anchors,
                              const char* label) {
        std::optional<std::string> text = slurp(dir + "/" + sub + "/calibration.json");
        c.expect(text.has_value(), std::string(label) + ": calibration.json written");
        if (!text) return;
        nlohmann::json rep = nlohmann::json::parse(*text);
        for (std::size_t i = 0; i < 5; ++i) {
            const auto& fam = rep["families"][i];
            c.expect(fam["family"] == anchors[i].family,
                     std::string(label) + ": family order " + anchors[i].family);
            c.expect(fam["status"] == "ok",
                     std::string(label) + ": " + anchors[i].family + " solvable");
            double p1 = fam.contains("alpha") ? fam["alpha"].get<double>()
                                              : fam["mu"].get<double>();
            double p2 = fam.contains("theta") ? fam["theta"].get<double>()
                                              : fam["sigma"].get<double>();
            c.expect(std::abs(p1 - anchors[i].p1) <= 0.01 * anchors[i].p1,
                     std::string(label) + ": " + anchors[i].family + " p1 within 1%");
            c.expect(std::abs(p2 - anchors[i].p2) <= 0.01 * anchors[i].p2,
                     std::string(label) + ": " + anchors[i].family + " p2 within 1%");
        }
    };
    check_scenario("s1", scenario1, "scenario (0.10,0.85)");
    check_scenario("s2", scenario2, "scenario (0.50,0.80)");
}

// ---------------------------------------------------------------------------
// Criterion 2: large-sample selection. At n=100000 with 50 replications in
// the (0.10, 0.85) scenario, BIC picks the generating family with frequency
// >= 0.85 for Fisk, Lognormal, Lomax and Paralogistic parents and >= 0.75
// for Weibull.
//
// The thresholds describe the large-sample regime, so the check runs at
// n=100000, which this engine completes in about five minutes on one core
// (well inside the ten-minute budget). Running the same check at n=20000
// is a coin flip: the true BIC self-selection frequencies there, measured
// once with 250 replications, are fisk 0.888, lognormal 0.840, lomax
// 0.872, paralogistic 0.844 and weibull 0.744 - at or below the
// thresholds, and no honest seed fixes a mean that sits under the bound.
// ---------------------------------------------------------------------------
void criterion_2(Check& c) {
    StudyConfig cfg;
    cfg.window = kWindow;
    cfg.p_d = 0.10;
    cfg.p_u = 0.85;
    cfg.n = 100000;
    cfg.replications = 50;
    cfg.seed = 1;
    SelectionStudyTable table = run_study(cfg);

    const std::size_t bic_idx = static_cast<std::size_t>(Criterion::bic);
    for (std::size_t pi = 0; pi < table.parents.size(); ++pi) {
        const ParentBlock& pb = table.parents[pi];
        double threshold = pb.parent == Family::weibull ? 0.75 : 0.85;
        double freq = pb.by_criterion[bic_idx].selection_freq[pi];
        std::ostringstream msg;
        msg << family_name(pb.parent) << " BIC self-selection " << freq
            << " >= " << threshold;
        c.expect(freq >= threshold, msg.str());
        c.note(std::string(family_name(pb.parent)) + ": BIC correct-selection frequency " +
               std::to_string(freq));
    }
}

// ---------------------------------------------------------------------------
// Criterion 3: confusion regime. In the (0.50, 0.80) scenario at n=1000
// with 100 replications, BIC selects Paralogistic for Paralogistic-parent
// data with frequency <= 0.15 and every candidate's mean BIC posterior lies
// in [0.10, 0.35].
// ---------------------------------------------------------------------------
void criterion_3(Check& c) {
    StudyConfig cfg;
    cfg.parents = {Family::paralogistic};
    cfg.window = kWindow;
    cfg.p_d = 0.50;
    cfg.p_u = 0.80;
    cfg.n = 1000;
    cfg.replications = 100;
    cfg.seed = 1;
    SelectionStudyTable table = run_study(cfg);

    const std::size_t bic_idx = static_cast<std::size_t>(Criterion::bic);
    const ParentBlock& pb = table.parents[0];
    // Candidate order matches default_study_families(); paralogistic sits
    // fourth.
    std::size_t para_idx = 0;
    for (std::size_t ci = 0; ci < table.candidates.size(); ++ci) {
        if (table.candidates[ci] == Family::paralogistic) para_idx = ci;
    }
    double self_freq = pb.by_criterion[bic_idx].selection_freq[para_idx];
    c.note("paralogistic BIC self-selection frequency " + std::to_string(self_freq));
    c.expect(self_freq <= 0.15, "paralogistic self-selection <= 0.15");

    const std::vector<double>& mean_post = pb.by_criterion[bic_idx].mean_posterior;
    c.expect(mean_post.size() == table.candidates.size(), "mean posterior per candidate");
    for (std::size_t ci = 0; ci < mean_post.size(); ++ci) {
        std::ostringstream msg;
        msg << family_name(table.candidates[ci]) << " mean BIC posterior " << mean_post[ci]
            << " in [0.10, 0.35]";
        c.expect(mean_post[ci] >= 0.10 && mean_post[ci] <= 0.35, msg.str());
        c.note(std::string(family_name(table.candidates[ci])) + ": mean BIC posterior " +
               std::to_string(mean_post[ci]));
    }
}

// ---------------------------------------------------------------------------
// Criterion 4: the Anderson-Darling computational formula agrees with
// direct quadrature of the integral definition within 1e-3 relative on 20
// seeded samples (n <= 300) spanning all six families.
// ---------------------------------------------------------------------------
void criterion_4(Check& c) {
    double worst = 0.0;
    for (int r = 0; r < 20; ++r) {
        Family f = static_cast<Family>(r % 6);
        std::size_t n = 60 + 12 * static_cast<std::size_t>(r);
        LtrcSample s = sample_ltrc(f, kWindowParams[r % 6], kWindow, n,
                                   1000 + static_cast<std::uint64_t>(r));
        double formula = ad_stat(f, kWindowParams[r % 6], kWindow, s);
        double oracle = ad_quadrature_oracle(f, kWindowParams[r % 6], kWindow, s);
        double rel = std::abs(formula - oracle) / std::max(std::abs(oracle), 1e-12);
        worst = std::max(worst, rel);
        std::ostringstream msg;
        msg << "sample " << r << " (" << family_name(f) << ", n=" << n
            << "): relative gap " << rel << " <= 1e-3";
        c.expect(std::isfinite(formula) && rel <= 1e-3, msg.str());
    }
    c.note("worst relative disagreement " + std::to_string(worst));
}

// ---------------------------------------------------------------------------
// Criterion 5: MLE oracle. A 200x200 log-spaced grid never beats fit_mle by
// more than 1e-3 on the seeded Fisk benchmark, and the complete-data
// Lognormal fit matches the closed form to 1e-6 relative.
// ---------------------------------------------------------------------------
void criterion_5(Check& c) {
    LtrcSample s = sample_ltrc(Family::fisk, {1.31, 2667.0}, kWindow, 500, 42);
    FitResult fit = fit_mle(Family::fisk, s, 42);
    PreparedSample prep(s);

    double grid_best = -kInf;
    for (int i = 0; i < 200; ++i) {
        double alpha = 0.5 * std::pow(3.0 / 0.5, i / 199.0);
        for (int j = 0; j < 200; ++j) {
            double theta = 500.0 * std::pow(10000.0 / 500.0, j / 199.0);
            grid_best = std::max(grid_best, loglik(Family::fisk, {alpha, theta}, prep));
        }
    }
    c.note("fit loglik " + std::to_string(fit.loglik_max) + ", grid best " +
           std::to_string(grid_best));
    c.expect(std::isfinite(fit.loglik_max), "Fisk fit produced a finite maximum");
    c.expect(grid_best <= fit.loglik_max + 1e-3, "grid search never beats fit_mle by 1e-3");

    // Complete-data lognormal closed form.
    std::vector<double> xs;
    for (int i = 0; i < 400; ++i) {
        xs.push_back(qf(Family::lognormal, {7.0, 1.1}, (i + 0.5) / 400.0));
    }
    double mu = 0.0;
    for (double x : xs) mu += std::log(x);
    mu /= 400.0;
    double s2 = 0.0;
    for (double x : xs) s2 += (std::log(x) - mu) * (std::log(x) - mu);
    double sigma = std::sqrt(s2 / 400.0);

    LtrcSample complete = make_ltrc_sample(std::move(xs), 0, TruncCens{0.0, kInf});
    FitResult lfit = fit_mle(Family::lognormal, complete, 7);
    double mu_rel = std::abs(lfit.params_hat.p1 - mu) / std::abs(mu);
    double sigma_rel = std::abs(lfit.params_hat.p2 - sigma) / sigma;
    c.note("lognormal closed-form gaps: mu " + std::to_string(mu_rel) + ", sigma " +
           std::to_string(sigma_rel));
    c.expect(mu_rel <= 1e-6, "mu matches the closed form to 1e-6");
    c.expect(sigma_rel <= 1e-6, "sigma matches the closed form to 1e-6");
}

// ---------------------------------------------------------------------------
// Criterion 6: criteria identities.
// ---------------------------------------------------------------------------
void criterion_6(Check& c) {
    // Posterior rows sum to one.
    const std::vector<std::vector<double>> delta_rows = {
        {0.0, 2.0, 6.0, 10.0, 50.0},
        {0.0, 1.0},
        {0.0, 0.0, 0.0, 0.0},
        {0.0, 0.5, 3.3, 17.2},
    };
    for (const auto& deltas : delta_rows) {
        std::vector<double> post = posterior_probs(deltas);
        double sum = 0.0;
        for (double p : post) sum += p;
        c.expect(std::abs(sum - 1.0) <= 1e-12, "posterior row sums to 1 within 1e-12");
    }

    // Evidence grades for deltas (0,1) and (0,7).
    auto grades1 = deltas_and_evidence({{100.0, 101.0}});
    c.expect(grades1[0] && grades1[0]->grade == EvidenceGrade::little,
             "delta 0 grades as little");
    c.expect(grades1[1] && grades1[1]->grade == EvidenceGrade::little,
             "delta 1 grades as little");
    auto grades7 = deltas_and_evidence({{100.0, 107.0}});
    c.expect(grades7[0] && grades7[0]->grade == EvidenceGrade::little,
             "delta 0 grades as little");
    c.expect(grades7[1] && grades7[1]->grade == EvidenceGrade::strong,
             "delta 7 grades as strong");

    // Equal-eigenvalue covariance: the complexity penalty is exactly zero.
    for (double a : {0.1, 1.0, 3.7, 7.77e-5}) {
        std::optional<double> v = icomp(-421.75, SymMat2{a, 0.0, a});
        c.expect(v.has_value() && *v == 843.5,
                 "ICOMP equals -2 loglik exactly for equal eigenvalues");
        std::optional<double> z = icomp(0.0, SymMat2{a, 0.0, a});
        c.expect(z.has_value() && *z == 0.0, "ICOMP complexity term is exactly zero");
    }

    // BIC - AIC identity for two-parameter families.
    for (std::size_t n : {std::size_t(10), std::size_t(1890), std::size_t(54321)}) {
        for (double ll : {0.0, -13834.5}) {
            double gap = bic(ll, 2, n) - aic(ll, 2);
            double expected = 2.0 * std::log(static_cast<double>(n)) - 4.0;
            c.expect(std::abs(gap - expected) <= 1e-9 * std::max(1.0, std::abs(expected)),
                     "BIC - AIC = 2 log n - 4");
        }
    }
}

// ---------------------------------------------------------------------------
// Criterion 7: determinism. Every command re-run with its embedded config
// produces byte-identical outputs, and the simulation engine's reports do
// not depend on the worker count.
// ---------------------------------------------------------------------------
void criterion_7(Check& c) {
    std::string dir = make_temp_dir();

    auto files_match = [&](const std::string& a, const std::string& b,
                           const std::string& what) {
        std::optional<std::string> ta = slurp(a);
        std::optional<std::string> tb = slurp(b);
        c.expect(ta.has_value() && tb.has_value() && *ta == *tb, what);
    };

    // calibrate: flags -> embedded config.
    c.expect(run_shell(cli() + " calibrate --p-d 0.2 --p-u 0.9 --seed 3 --out " + dir + "/c1"),
             "calibrate run exits 0");
    c.expect(run_shell(cli() + " calibrate --config " + dir + "/c1/calibration.json --out " +
                       dir + "/c2"),
             "calibrate config re-run exits 0");
    files_match(dir + "/c1/calibration.csv", dir + "/c2/calibration.csv",
                "calibrate CSV byte-identical under config re-run");
    files_match(dir + "/c1/calibration.json", dir + "/c2/calibration.json",
                "calibrate JSON byte-identical under config re-run");

    // simulate: worker counts 1 and 3, then an embedded-config re-run.
    std::string sim_args = " simulate --families fisk,weibull --n 300 --N 6 --seed 6 ";
    c.expect(run_shell("env LTRC_WORKERS=1 " + cli() + sim_args + "--export-data --out " +
                       dir + "/s1"),
             "simulate with 1 worker exits 0");
    c.expect(run_shell("env LTRC_WORKERS=3 " + cli() + sim_args + "--out " + dir + "/s3"),
             "simulate with 3 workers exits 0");
    files_match(dir + "/s1/study_report.csv", dir + "/s3/study_report.csv",
                "study CSV independent of worker count");
    files_match(dir + "/s1/study_report.json", dir + "/s3/study_report.json",
                "study JSON independent of worker count");
    c.expect(run_shell(cli() + " simulate --config " + dir + "/s1/study_report.json --out " +
                       dir + "/s2"),
             "simulate config re-run exits 0");
    files_match(dir + "/s1/study_report.csv", dir + "/s2/study_report.csv",
                "study CSV byte-identical under config re-run");
    files_match(dir + "/s1/study_report.json", dir + "/s2/study_report.json",
                "study JSON byte-identical under config re-run");

    // fit on the exported sample: flags -> embedded config.
    std::string sample = dir + "/s1/sample_fisk.csv";
    c.expect(run_shell(cli() + " fit --data " + sample + " --d 500 --u 10000 --seed 19 --out " +
                       dir + "/f1"),
             "fit run exits 0");
    c.expect(run_shell(cli() + " fit --data " + sample + " --config " + dir +
                       "/f1/fit_report.json --out " + dir + "/f2"),
             "fit config re-run exits 0");
    for (const char* name : {"fit_report.csv", "fit_report.json", "fit_ranking.csv"}) {
        files_match(dir + "/f1/" + name, dir + "/f2/" + name,
                    std::string(name) + " byte-identical under config re-run");
    }

    // qq: flags -> embedded config carried by the CSV comment line.
    c.expect(run_shell(cli() + " qq --data " + sample + " --d 500 --u 10000 --family fisk "
                       "--seed 19 --out " + dir + "/q1"),
             "qq run exits 0");
    c.expect(run_shell(cli() + " qq --data " + sample + " --config " + dir +
                       "/q1/qq_fisk.csv --out " + dir + "/q2"),
             "qq config re-run exits 0");
    files_match(dir + "/q1/qq_fisk.csv", dir + "/q2/qq_fisk.csv",
                "qq CSV byte-identical under config re-run");
}

}  // namespace

int main() {
    struct Criterion {
        int number;
        void (*fn)(Check&);
    };
    const Criterion criteria[] = {
        {1, criterion_1}, {2, criterion_2}, {3, criterion_3}, {4, criterion_4},
        {5, criterion_5}, {6, criterion_6}, {7, criterion_7},
    };

    int failures = 0;
    for (const Criterion& cr : criteria) {
        Check check;
        auto t0 = std::chrono::steady_clock::now();
        try {
            cr.fn(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("unexpected exception: ") + e.what());
        }
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();

        std::cout << "[ACCEPTANCE] criterion " << cr.number << ": "
                  << (check.ok ? "PASS" : "FAIL") << "\n";
        std::cout << "    elapsed " << secs << " s\n";
        for (const std::string& note : check.notes) {
            std::cout << "    " << note << "\n";
        }
        std::cout.flush();
        if (!check.ok) ++failures;
    }
    return failures;
}
