#include "qbet/trace_io.hpp"

#include <cstdio>
#include <fstream>

#include "qbet/errors.hpp"

namespace qbet {

namespace {

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary: no newline translation
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

std::string format_number(double value) {
    if (value == 0.0)
        return "0"; // avoid "-0"
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

void write_trace_csv(const std::string& path, const EnergyTrace& trace, double g) {
    auto out = open_for_write(path);
    out << "g_t,omega_b_t,E_B,E_C,E_M\n";
    for (int i = 0; i < trace.size(); ++i) {
        out << format_number(g * trace.times[i]) << ',' << format_number(trace.times[i]) << ','
            << format_number(trace.e_b[i]) << ',' << format_number(trace.e_c[i]) << ',';
        if (trace.has_mediator())
            out << format_number(trace.e_m[i]);
        out << '\n';
    }
}

void write_transfer_report(const std::string& path,
                           const std::vector<std::pair<std::string, TransferReport>>& reports,
                           double g) {
    auto out = open_for_write(path);
    bool first = true;
    for (const auto& [method, report] : reports) {
        if (!first)
            out << '\n';
        first = false;
        out << "method = " << method << '\n';
        out << "scenario = " << to_string(report.scenario) << '\n';
        out << "g_over_omega_b = " << format_number(g) << '\n';
        out << "k_index = " << report.k_index << '\n';
        out << "e_b_max_over_omega_b = " << format_number(report.e_b_max) << '\n';
        out << "g_t_b_max = " << format_number(g * report.t_b_max) << '\n';
        out << "omega_b_t_b_max = " << format_number(report.t_b_max) << '\n';
        out << "interior_maximum = " << (report.interior_maximum ? "true" : "false") << '\n';
    }
}

void write_comparison_report(const std::string& path,
                             const std::vector<ComparisonEntry>& entries) {
    auto out = open_for_write(path);
    bool first = true;
    for (const auto& entry : entries) {
        if (!first)
            out << '\n';
        first = false;
        out << "pair = " << entry.pair_name << '\n';
        out << "max_abs_delta_e_b = " << format_number(entry.comparison.max_delta_e_b) << '\n';
        out << "max_abs_delta_e_c = " << format_number(entry.comparison.max_delta_e_c) << '\n';
        out << "max_abs_delta_e_m = " << format_number(entry.comparison.max_delta_e_m) << '\n';
        out << "tolerance = " << format_number(entry.tolerance) << '\n';
        out << "status = " << (entry.comparison.within(entry.tolerance) ? "pass" : "fail")
            << '\n';
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    auto out = open_for_write(path);
    out << "g_over_omega_b,scenario,omega_b_t_max,method\n";
    for (const auto& row : rows) {
        out << format_number(row.g) << ',' << to_string(row.scenario) << ','
            << format_number(row.omega_b_t_max) << ',' << row.method << '\n';
    }
}

} // namespace qbet
