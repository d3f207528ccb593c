// runner.hpp — Run configurations and the scenario / sweep / verify drivers

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qbet/system.hpp"
#include "qbet/switching.hpp"

namespace qbet {

// Exit codes shared by the drivers and the CLI.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_tolerance = 2;

enum class Method { Analytic, Piecewise, Rk4 };

const char* to_string(Method m);

// One scenario run. All quantities are dimensionless in the paper's units:
// g in omega_b, sigma and tau as g*sigma / g*tau, the grid end as g*t.
struct RunConfig {
    Scenario scenario = Scenario::Direct;
    double g_over_omega_b = 0.05;
    std::optional<double> sigma_g;   // g*sigma, TwoStep only
    std::optional<double> tau_g;     // g*tau; absent = first-maximum choice
    ModelVariant model_variant = ModelVariant::Reduced;
    std::optional<double> t_end_g;   // grid end in g*t; absent = 2 * g*t_max
    int n_samples = 2000;
    std::vector<Method> methods = {Method::Analytic, Method::Piecewise};
    double rk4_step = 1e-3;          // in 1/omega_b
    std::optional<double> tolerance; // comparison tolerance; absent = default
    std::string trace_path = "trace.csv";
    std::string report_path = "report.txt";
    std::optional<std::string> compare_path; // absent = derived from report_path

    void validate() const; // throws ConfigError
};

// Flat key = value file (# comments). Unknown keys are an error.
RunConfig parse_run_config(const std::string& path);

// Applies one key = value pair (same keys as the config file).
void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value);

// Executes one scenario: writes one trace per method, a transfer report,
// and (for >= 2 methods) a comparison report. Returns exit_ok or
// exit_tolerance; throws ConfigError for invalid configs.
int run_scenario(const RunConfig& config, std::ostream& log);

struct SweepConfig {
    std::vector<Scenario> scenarios = {Scenario::Direct, Scenario::TwoStepMediated,
                                       Scenario::CoherentMediated};
    std::vector<double> g_values;      // empty -> usage error
    double omega_b_sigma = 100.0;      // delay for the two-step rows
    bool numeric_check = true;         // cross-check with the propagator
    double check_rel_tolerance = 1e-3; // |t_numeric - t_analytic| / t_analytic
    std::string out_path = "sweep.csv";
};

// Transfer-time table over g values; optionally cross-checked numerically.
int run_sweep(const SweepConfig& config, std::ostream& log);

struct VerifyConfig {
    double g = 0.05;
    std::vector<double> sigma_g = {2.5, 7.5}; // two-step delays to check
    double piecewise_tolerance = 1e-10;
    double rk4_tolerance = 1e-8;
    double rk4_step = 1e-3;
    int n_samples = 2000;
};

// Full closed-form vs numeric comparison across the three scenarios; prints
// one pass/fail line per check.
int run_verify(const VerifyConfig& config, std::ostream& log);

// Default g grid for sweeps: 0.01, 0.02, ..., 0.10.
std::vector<double> default_sweep_g_values();

Scenario parse_scenario(const std::string& text);       // throws ConfigError
ModelVariant parse_model_variant(const std::string& text);
std::vector<Method> parse_methods(const std::string& text);

} // namespace qbet
