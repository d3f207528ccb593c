// qbet — energy transfer between a charger qubit and a battery qubit,
// directly or through a mediator. Subcommands:
//   run     one scenario -> trace/report files
//   sweep   transfer-time table over coupling strengths
//   verify  closed forms vs numerical propagation, pass/fail
//
// Exit codes: 0 success, 1 usage error, 2 tolerance breach.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qbet/runner.hpp"

namespace {

struct RunCliOptions {
    std::string config_path;
    std::optional<std::string> scenario;
    std::optional<double> g;
    std::optional<double> sigma_g;
    std::optional<std::string> tau_g;
    std::optional<std::string> model_variant;
    std::optional<double> t_end_g;
    std::optional<int> n_samples;
    std::optional<std::string> methods;
    std::optional<double> rk4_step;
    std::optional<double> tolerance;
    std::optional<std::string> trace;
    std::optional<std::string> report;
    std::optional<std::string> compare;
};

qbet::RunConfig build_run_config(const RunCliOptions& options) {
    qbet::RunConfig config;
    if (!options.config_path.empty())
        config = qbet::parse_run_config(options.config_path);
    auto set = [&config](const char* key, const auto& value) {
        if (value)
            qbet::apply_config_entry(config, key, [&] {
                if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>)
                    return *value;
                else
                    return std::to_string(*value);
            }());
    };
    set("scenario", options.scenario);
    set("sigma_g", options.sigma_g);
    set("tau_g", options.tau_g);
    set("model_variant", options.model_variant);
    set("t_end_g", options.t_end_g);
    set("n_samples", options.n_samples);
    set("methods", options.methods);
    set("tolerance", options.tolerance);
    set("trace", options.trace);
    set("report", options.report);
    set("compare", options.compare);
    // Numeric values go through directly to avoid to_string rounding.
    if (options.g)
        config.g_over_omega_b = *options.g;
    if (options.sigma_g)
        config.sigma_g = *options.sigma_g;
    if (options.t_end_g)
        config.t_end_g = *options.t_end_g;
    if (options.rk4_step)
        config.rk4_step = *options.rk4_step;
    if (options.tolerance)
        config.tolerance = *options.tolerance;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Coherent energy transfer between two-level systems"};
    app.require_subcommand(1);

    RunCliOptions run_options;
    auto* run = app.add_subcommand("run", "Run one scenario and write trace/report files");
    run->add_option("--config", run_options.config_path, "Flat key = value config file");
    run->add_option("--scenario", run_options.scenario, "direct | two_step | coherent");
    run->add_option("--g", run_options.g, "Coupling g in units of omega_b");
    run->add_option("--sigma-g", run_options.sigma_g, "Two-step delay as g*sigma");
    run->add_option("--tau-g", run_options.tau_g, "g*tau or 'first_maximum'");
    run->add_option("--model-variant", run_options.model_variant,
                    "reduced | full_rwa | full_cr");
    run->add_option("--t-end-g", run_options.t_end_g, "Grid end as g*t");
    run->add_option("--n-samples", run_options.n_samples, "Grid samples (default 2000)");
    run->add_option("--methods", run_options.methods, "Subset of analytic,piecewise,rk4");
    run->add_option("--rk4-step", run_options.rk4_step, "RK4 step in 1/omega_b");
    run->add_option("--tolerance", run_options.tolerance, "Cross-method comparison tolerance");
    run->add_option("--trace", run_options.trace, "Trace file base path (default trace.csv)");
    run->add_option("--report", run_options.report, "Report path (default report.txt)");
    run->add_option("--compare", run_options.compare, "Comparison report path");

    qbet::SweepConfig sweep_config;
    std::vector<std::string> sweep_scenarios;
    std::vector<double> sweep_g_values;
    auto* sweep = app.add_subcommand("sweep", "Transfer times over a range of couplings");
    sweep->add_option("--scenarios", sweep_scenarios,
                      "Scenarios to sweep (default all three)");
    sweep->add_option("--g-values", sweep_g_values,
                      "g values (default 0.01..0.10 step 0.01)");
    sweep->add_option("--omega-b-sigma", sweep_config.omega_b_sigma,
                      "Two-step delay as omega_b*sigma (default 100)");
    sweep->add_flag("--check,!--no-check", sweep_config.numeric_check,
                    "Cross-check with the propagator (default on)");
    sweep->add_option("--out", sweep_config.out_path, "Output table (default sweep.csv)");

    qbet::VerifyConfig verify_config;
    auto* verify = app.add_subcommand("verify",
                                      "Compare closed forms against the propagators");
    verify->add_option("--g", verify_config.g, "Coupling (default 0.05)");
    verify->add_option("--sigma-g", verify_config.sigma_g,
                       "Two-step delays as g*sigma (default 2.5 7.5)");
    verify->add_option("--tolerance", verify_config.piecewise_tolerance,
                       "Analytic vs piecewise tolerance (default 1e-10)");
    verify->add_option("--rk4-tolerance", verify_config.rk4_tolerance,
                       "Analytic vs rk4 tolerance (default 1e-8)");
    verify->add_option("--n-samples", verify_config.n_samples, "Grid samples (default 2000)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) // --help and friends
            return app.exit(e);
        app.exit(e);
        return qbet::exit_usage;
    }

    try {
        if (run->parsed())
            return qbet::run_scenario(build_run_config(run_options), std::cout);
        if (sweep->parsed()) {
            if (!sweep_scenarios.empty()) {
                sweep_config.scenarios.clear();
                for (const auto& name : sweep_scenarios)
                    sweep_config.scenarios.push_back(qbet::parse_scenario(name));
            }
            sweep_config.g_values =
                sweep_g_values.empty() ? qbet::default_sweep_g_values() : sweep_g_values;
            return qbet::run_sweep(sweep_config, std::cout);
        }
        return qbet::run_verify(verify_config, std::cout);
    } catch (const qbet::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qbet::exit_usage;
    } catch (const qbet::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return qbet::exit_usage;
    }
}
