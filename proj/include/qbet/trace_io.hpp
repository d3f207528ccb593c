// trace_io.hpp — Deterministic text output for traces, reports and sweep tables

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qbet/trace.hpp"

namespace qbet {

// Fixed 12-significant-digit formatting so identical inputs produce
// byte-identical files.
std::string format_number(double value);

// CSV with header g_t,omega_b_t,E_B,E_C,E_M; energies as ratios to omega_b,
// E_M left empty for direct traces.
void write_trace_csv(const std::string& path, const EnergyTrace& trace, double g);

// Flat key-value transfer report, one block per method.
void write_transfer_report(const std::string& path,
                           const std::vector<std::pair<std::string, TransferReport>>& reports,
                           double g);

struct ComparisonEntry {
    std::string pair_name; // e.g. "analytic/piecewise"
    TraceComparison comparison;
    double tolerance = 0.0;
};

void write_comparison_report(const std::string& path,
                             const std::vector<ComparisonEntry>& entries);

struct SweepRow {
    double g = 0.0;
    Scenario scenario = Scenario::Direct;
    double omega_b_t_max = 0.0;
    std::string method;
};

// CSV with header g_over_omega_b,scenario,omega_b_t_max,method.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

} // namespace qbet
