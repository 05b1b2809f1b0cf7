#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "data_io.hpp"
#include "ltrc/errors.hpp"
#include "ltrc/simulation.hpp"
#include "options.hpp"
#include "reports.hpp"

namespace {

using namespace ltrc;
using namespace ltrc::cli;

void announce(const std::vector<std::string>& files) {
    for (const std::string& f : files) std::cout << "wrote " << f << "\n";
}

int dispatch(Command cmd, const std::string& config_path, const FlagOverrides& flags,
             const std::string& data_path, const std::string& qq_family, bool export_data) {
    RunConfig cfg = resolve_config(cmd, config_path, flags);

    switch (cmd) {
        case Command::fit: {
            std::vector<LossRow> rows = read_loss_csv(data_path, cfg);
            LtrcSample sample = rows_to_sample(rows, cfg);
            std::vector<FamilyReport> reports = run_fit_pipeline(cfg, sample);
            announce(write_fit_reports(cfg, reports, sample));
            return 0;
        }
        case Command::qq: {
            if (!qq_family.empty()) cfg.families = parse_family_list(qq_family);
            std::vector<LossRow> rows = read_loss_csv(data_path, cfg);
            LtrcSample sample = rows_to_sample(rows, cfg);
            announce(write_qq_files(cfg, sample));
            return 0;
        }
        case Command::simulate: {
            StudyConfig scfg;
            scfg.parents = cfg.families;
            scfg.candidates = cfg.families;
            scfg.window = TruncCens{cfg.d, cfg.u};
            scfg.p_d = cfg.p_d;
            scfg.p_u = cfg.p_u;
            scfg.n = cfg.n;
            scfg.replications = cfg.replications;
            scfg.seed = cfg.seed;
            SelectionStudyTable table = run_study(scfg);
            std::vector<std::string> files = write_study_reports(cfg, table);
            if (export_data) {
                std::vector<std::string> extra = export_study_samples(cfg, table);
                files.insert(files.end(), extra.begin(), extra.end());
            }
            announce(files);
            return 0;
        }
        case Command::calibrate: {
            announce(write_calibration_reports(cfg));
            return 0;
        }
    }
    return 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parametric severity-model fitting and selection for losses observed "
                 "with a deductible and a policy limit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_path;
    std::string qq_family;
    bool export_data = false;
    FlagOverrides flags;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "JSON config file, or a previously emitted report with an embedded "
                        "config");
        cmd->add_option("--d", flags.d, "deductible (left truncation point)");
        cmd->add_option("--u", flags.u, "policy limit (right censoring point), or 'inf'");
        cmd->add_option("--families", flags.families,
                        "comma-separated families (fisk, frechet, lognormal, lomax, "
                        "paralogistic, weibull)");
        cmd->add_option("--seed", flags.seed, "random seed");
        cmd->add_option("--out", flags.out_dir, "output directory");
        cmd->add_option("--formats", flags.formats, "comma-separated report formats: csv,json");
    };
    auto add_window_levels = [&](CLI::App* cmd) {
        cmd->add_option("--p-d,--p_d", flags.p_d, "target F(d) for percentile matching");
        cmd->add_option("--p-u,--p_u", flags.p_u, "target F(u) for percentile matching");
    };

    CLI::App* fit = app.add_subcommand(
        "fit", "Fit the configured families to a loss CSV and emit comparison reports");
    add_common(fit);
    fit->add_option("--data", data_path, "input loss CSV")->required();

    CLI::App* qq = app.add_subcommand(
        "qq", "Fit and emit log-log quantile-quantile points per family");
    add_common(qq);
    qq->add_option("--data", data_path, "input loss CSV")->required();
    qq->add_option("--family", qq_family, "restrict to one family");

    CLI::App* sim = app.add_subcommand(
        "simulate", "Run a model-selection study over calibrated parent distributions");
    add_common(sim);
    add_window_levels(sim);
    sim->add_option("--n", flags.n, "sample size per replication");
    sim->add_option("--N,--replications", flags.replications, "replications per parent");
    sim->add_flag("--export-data", export_data,
                  "also write each parent's first simulated sample as a loss CSV");

    CLI::App* cal = app.add_subcommand(
        "calibrate", "Percentile-match each family's parameters to the observation window");
    add_common(cal);
    add_window_levels(cal);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Command cmd = Command::fit;
    if (qq->parsed()) cmd = Command::qq;
    if (sim->parsed()) cmd = Command::simulate;
    if (cal->parsed()) cmd = Command::calibrate;

    try {
        return dispatch(cmd, config_path, flags, data_path, qq_family, export_data);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const insufficient_data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const data_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
