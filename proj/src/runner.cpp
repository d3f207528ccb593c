#include "qbet/runner.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qbet/analytic.hpp"
#include "qbet/propagator.hpp"
#include "qbet/trace_io.hpp"

namespace qbet {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t consumed = 0;
    double parsed = 0.0;
    try {
        parsed = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
    }
    if (consumed != value.size())
        throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
    return parsed;
}

int parse_int(const std::string& key, const std::string& value) {
    const double parsed = parse_double(key, value);
    const int as_int = static_cast<int>(parsed);
    if (parsed != as_int)
        throw ConfigError("config: '" + key + "' expects an integer, got '" + value + "'");
    return as_int;
}

// "trace.csv" + "_analytic" -> "trace_analytic.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

SystemSpec spec_for(const RunConfig& config) {
    return config.scenario == Scenario::Direct
               ? SystemSpec::direct(config.g_over_omega_b, config.model_variant)
               : SystemSpec::mediated(config.scenario, config.g_over_omega_b,
                                      config.model_variant);
}

double conservation_tolerance(Method method) {
    return method == Method::Rk4 ? 1e-7 : 1e-10;
}

} // namespace

const char* to_string(Method m) {
    switch (m) {
    case Method::Analytic: return "analytic";
    case Method::Piecewise: return "piecewise";
    case Method::Rk4: return "rk4";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text) {
    if (text == "direct")
        return Scenario::Direct;
    if (text == "two_step" || text == "two-step" || text == "twostep")
        return Scenario::TwoStepMediated;
    if (text == "coherent")
        return Scenario::CoherentMediated;
    throw ConfigError("config: unknown scenario '" + text + "'");
}

ModelVariant parse_model_variant(const std::string& text) {
    if (text == "reduced")
        return ModelVariant::Reduced;
    if (text == "full_rwa" || text == "full-rwa")
        return ModelVariant::FullRWA;
    if (text == "full_cr" || text == "full-cr")
        return ModelVariant::FullCounterRotating;
    throw ConfigError("config: unknown model variant '" + text + "'");
}

std::vector<Method> parse_methods(const std::string& text) {
    std::vector<Method> methods;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        Method method;
        if (item == "analytic")
            method = Method::Analytic;
        else if (item == "piecewise")
            method = Method::Piecewise;
        else if (item == "rk4")
            method = Method::Rk4;
        else
            throw ConfigError("config: unknown method '" + item + "'");
        if (std::find(methods.begin(), methods.end(), method) == methods.end())
            methods.push_back(method);
    }
    if (methods.empty())
        throw ConfigError("config: at least one method is required");
    return methods;
}

void apply_config_entry(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "scenario")
        config.scenario = parse_scenario(value);
    else if (key == "g_over_omega_b" || key == "g")
        config.g_over_omega_b = parse_double(key, value);
    else if (key == "sigma_g")
        config.sigma_g = parse_double(key, value);
    else if (key == "tau_g")
        config.tau_g = value == "first_maximum"
                           ? std::optional<double>{}
                           : std::optional<double>{parse_double(key, value)};
    else if (key == "model_variant")
        config.model_variant = parse_model_variant(value);
    else if (key == "t_end_g")
        config.t_end_g = parse_double(key, value);
    else if (key == "n_samples")
        config.n_samples = parse_int(key, value);
    else if (key == "methods")
        config.methods = parse_methods(value);
    else if (key == "rk4_step")
        config.rk4_step = parse_double(key, value);
    else if (key == "tolerance")
        config.tolerance = parse_double(key, value);
    else if (key == "trace")
        config.trace_path = value;
    else if (key == "report")
        config.report_path = value;
    else if (key == "compare")
        config.compare_path = value;
    else
        throw ConfigError("config: unknown key '" + key + "'");
}

RunConfig parse_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    RunConfig config;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(line_number) +
                              " is not 'key = value'");
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return config;
}

void RunConfig::validate() const {
    if (!(g_over_omega_b > 0.0))
        throw ConfigError("config: g_over_omega_b must be positive");
    if (scenario == Scenario::TwoStepMediated && !sigma_g)
        throw ConfigError("config: two_step requires sigma_g");
    if (scenario != Scenario::TwoStepMediated && sigma_g)
        throw ConfigError("config: sigma_g only applies to two_step");
    if (tau_g && !(*tau_g > 0.0))
        throw ConfigError("config: tau_g must be positive");
    if (t_end_g && !(*t_end_g > 0.0))
        throw ConfigError("config: t_end_g must be positive");
    if (n_samples < 2)
        throw ConfigError("config: n_samples must be at least 2");
    if (!(rk4_step > 0.0))
        throw ConfigError("config: rk4_step must be positive");
    if (methods.empty())
        throw ConfigError("config: at least one method is required");
    if (tolerance && !(*tolerance > 0.0))
        throw ConfigError("config: tolerance must be positive");
}

int run_scenario(const RunConfig& config, std::ostream& log) {
    config.validate();
    const double g = config.g_over_omega_b;
    const SystemSpec spec = spec_for(config);
    if (spec.rwa_warning())
        log << "warning: g = " << g
            << " omega_b is outside the rotating-wave regime (g <= 0.1 omega_b)\n";

    const TauChoice tau_choice = config.tau_g ? TauChoice::explicit_value(*config.tau_g / g)
                                              : TauChoice::first_maximum();
    const std::optional<double> sigma =
        config.sigma_g ? std::optional<double>{*config.sigma_g / g} : std::nullopt;
    const ProtocolSchedule protocol =
        make_protocol_schedule(config.scenario, g, tau_choice, sigma);
    if (!protocol.well_separated())
        log << "warning: two-step delay sigma is below 5 tau; legs are barely separated\n";

    double t_end;
    if (config.t_end_g) {
        t_end = *config.t_end_g / g;
    } else {
        // Default view: out to twice the first stored-energy maximum.
        t_end = 2.0 * first_transfer_time(config.scenario, g, sigma).t_b_max;
    }
    const TimeGrid grid = TimeGrid::for_protocol(0.0, t_end, config.n_samples, protocol);

    std::vector<std::pair<Method, EnergyTrace>> traces;
    std::vector<std::pair<std::string, TransferReport>> reports;
    for (Method method : config.methods) {
        EnergyTrace trace;
        TransferReport report;
        switch (method) {
        case Method::Analytic:
            trace = analytic_trace(spec, protocol, grid);
            report = first_transfer_time(config.scenario, g, sigma, spec.omega_b);
            break;
        case Method::Piecewise: {
            const Trajectory trajectory =
                propagate_piecewise(spec, protocol, grid, initial_state(spec));
            trace = energies_from_states(spec, trajectory);
            report = find_first_maximum(trace, config.scenario);
            break;
        }
        case Method::Rk4: {
            const Trajectory trajectory =
                propagate_rk4(spec, protocol, grid, config.rk4_step, initial_state(spec));
            trace = energies_from_states(spec, trajectory);
            report = find_first_maximum(trace, config.scenario);
            break;
        }
        }

        const double residual = trace.max_conservation_residual();
        if (residual > conservation_tolerance(method)) {
            log << "error: " << to_string(method) << " trace violates energy conservation ("
                << residual << ")\n";
            return exit_tolerance;
        }
        const double violation = trace.max_bound_violation(spec.omega_b);
        if (violation > 1e-9) {
            log << "error: " << to_string(method) << " trace violates energy bounds ("
                << violation << ")\n";
            return exit_tolerance;
        }

        const std::string trace_path =
            with_suffix(config.trace_path, std::string("_") + to_string(method));
        write_trace_csv(trace_path, trace, g);
        log << "wrote " << trace_path << "\n";
        traces.emplace_back(method, std::move(trace));
        reports.emplace_back(to_string(method), report);
    }

    write_transfer_report(config.report_path, reports, g);
    log << "wrote " << config.report_path << "\n";

    int status = exit_ok;
    if (traces.size() >= 2) {
        std::vector<ComparisonEntry> entries;
        for (std::size_t i = 0; i < traces.size(); ++i) {
            for (std::size_t j = i + 1; j < traces.size(); ++j) {
                const bool has_rk4 =
                    traces[i].first == Method::Rk4 || traces[j].first == Method::Rk4;
                ComparisonEntry entry;
                entry.pair_name = std::string(to_string(traces[i].first)) + "/" +
                                  to_string(traces[j].first);
                entry.comparison = compare_traces(traces[i].second, traces[j].second);
                entry.tolerance = config.tolerance.value_or(has_rk4 ? 1e-8 : 1e-10);
                if (!entry.comparison.within(entry.tolerance)) {
                    log << "error: " << entry.pair_name << " deviate by "
                        << entry.comparison.max_delta() << " (tolerance " << entry.tolerance
                        << ")\n";
                    status = exit_tolerance;
                }
                entries.push_back(std::move(entry));
            }
        }
        const std::string compare_path =
            config.compare_path.value_or(with_suffix(config.report_path, "_compare"));
        write_comparison_report(compare_path, entries);
        log << "wrote " << compare_path << "\n";
    }
    return status;
}

namespace {

struct SweepPoint {
    std::vector<SweepRow> rows;
    std::vector<std::string> notes;
    bool breach = false;
};

SweepPoint evaluate_sweep_point(Scenario scenario, double g, const SweepConfig& config) {
    SweepPoint point;
    const std::optional<double> sigma = scenario == Scenario::TwoStepMediated
                                            ? std::optional<double>{config.omega_b_sigma}
                                            : std::nullopt;
    const TransferReport analytic = first_transfer_time(scenario, g, sigma);
    point.rows.push_back({g, scenario, analytic.t_b_max, "analytic"});
    if (!config.numeric_check)
        return point;

    if (scenario == Scenario::TwoStepMediated &&
        *sigma < std::numbers::pi / (2.0 * g)) {
        // The legs would overlap; the formula still applies but there is no
        // valid schedule to propagate.
        point.notes.push_back("note: numeric check skipped for two_step at g = " +
                              format_number(g) + " (sigma < tau)");
        return point;
    }

    const SystemSpec spec = scenario == Scenario::Direct
                                ? SystemSpec::direct(g)
                                : SystemSpec::mediated(scenario, g);
    const ProtocolSchedule protocol =
        make_protocol_schedule(scenario, g, TauChoice::first_maximum(), sigma);
    const TimeGrid grid =
        TimeGrid::for_protocol(0.0, 1.25 * analytic.t_b_max, 2001, protocol);
    const Trajectory trajectory = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const TransferReport numeric =
        find_first_maximum(energies_from_states(spec, trajectory), scenario);
    point.rows.push_back({g, scenario, numeric.t_b_max, "piecewise"});

    const double rel = std::abs(numeric.t_b_max - analytic.t_b_max) / analytic.t_b_max;
    if (rel > config.check_rel_tolerance) {
        point.notes.push_back("error: numeric transfer time deviates by rel " +
                              format_number(rel) + " for " + to_string(scenario) + " at g = " +
                              format_number(g));
        point.breach = true;
    }
    return point;
}

} // namespace

std::vector<double> default_sweep_g_values() {
    std::vector<double> values;
    for (int i = 1; i <= 10; ++i)
        values.push_back(i / 100.0);
    return values;
}

int run_sweep(const SweepConfig& config, std::ostream& log) {
    if (config.g_values.empty())
        throw ConfigError("sweep: empty g list");
    if (config.scenarios.empty())
        throw ConfigError("sweep: empty scenario list");
    for (double g : config.g_values) {
        if (!(g > 0.0))
            throw ConfigError("sweep: g values must be positive");
        if (g > 0.1)
            log << "warning: g = " << g << " omega_b is outside the rotating-wave regime\n";
    }

    // Points are independent; evaluate them concurrently and emit in order.
    std::vector<std::future<SweepPoint>> futures;
    for (Scenario scenario : config.scenarios)
        for (double g : config.g_values)
            futures.push_back(std::async(std::launch::async, evaluate_sweep_point, scenario, g,
                                         std::cref(config)));

    std::vector<SweepRow> rows;
    bool breach = false;
    for (auto& future : futures) {
        SweepPoint point = future.get();
        rows.insert(rows.end(), point.rows.begin(), point.rows.end());
        for (const auto& note : point.notes)
            log << note << "\n";
        breach = breach || point.breach;
    }

    write_sweep_csv(config.out_path, rows);
    log << "wrote " << config.out_path << "\n";
    return breach ? exit_tolerance : exit_ok;
}

namespace {

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass() const { return measured <= tolerance; }
};

void verify_one(const VerifyConfig& config, Scenario scenario, std::optional<double> sigma_g,
                std::vector<VerifyCheck>& checks) {
    const double g = config.g;
    const std::optional<double> sigma =
        sigma_g ? std::optional<double>{*sigma_g / g} : std::nullopt;
    const SystemSpec spec = scenario == Scenario::Direct ? SystemSpec::direct(g)
                                                         : SystemSpec::mediated(scenario, g);
    const ProtocolSchedule protocol =
        make_protocol_schedule(scenario, g, TauChoice::first_maximum(), sigma);
    const TransferReport expected = first_transfer_time(scenario, g, sigma);
    const TimeGrid grid =
        TimeGrid::for_protocol(0.0, 2.0 * expected.t_b_max, config.n_samples, protocol);

    std::string label = to_string(scenario);
    if (sigma_g)
        label += " (g sigma = " + format_number(*sigma_g) + ")";

    const EnergyTrace analytic = analytic_trace(spec, protocol, grid);
    const Trajectory piecewise = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const EnergyTrace piecewise_trace = energies_from_states(spec, piecewise);
    const Trajectory rk4 =
        propagate_rk4(spec, protocol, grid, config.rk4_step, initial_state(spec));
    const EnergyTrace rk4_trace = energies_from_states(spec, rk4);

    checks.push_back({label + ": analytic vs piecewise max|dE|",
                      compare_traces(analytic, piecewise_trace).max_delta(),
                      config.piecewise_tolerance});
    checks.push_back({label + ": analytic vs rk4 max|dE|",
                      compare_traces(analytic, rk4_trace).max_delta(), config.rk4_tolerance});
    checks.push_back({label + ": piecewise norm drift", piecewise.max_norm_drift(), 1e-12});
    checks.push_back({label + ": piecewise conservation residual",
                      piecewise_trace.max_conservation_residual(), 1e-10});

    const TransferReport located = find_first_maximum(piecewise_trace, scenario);
    checks.push_back({label + ": located vs formula transfer time",
                      std::abs(located.t_b_max - expected.t_b_max),
                      1e-3 * expected.t_b_max});
}

} // namespace

int run_verify(const VerifyConfig& config, std::ostream& log) {
    std::vector<VerifyCheck> checks;
    verify_one(config, Scenario::Direct, std::nullopt, checks);
    for (double sigma_g : config.sigma_g)
        verify_one(config, Scenario::TwoStepMediated, sigma_g, checks);
    verify_one(config, Scenario::CoherentMediated, std::nullopt, checks);

    bool all_pass = true;
    for (const auto& check : checks) {
        log << (check.pass() ? "[PASS] " : "[FAIL] ") << check.name << " = "
            << format_number(check.measured) << " (tolerance " << format_number(check.tolerance)
            << ")\n";
        all_pass = all_pass && check.pass();
    }
    log << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES above\n");
    return all_pass ? exit_ok : exit_tolerance;
}

} // namespace qbet
