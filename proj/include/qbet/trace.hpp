// trace.hpp — Sampling grids, energy traces and transfer reports

#pragma once

#include <string>
#include <vector>

#include "qbet/switching.hpp"
#include "qbet/system.hpp"

namespace qbet {

// Strictly increasing sample times. Grids built for a protocol contain
// every window edge exactly, so no sample interval straddles a switching
// discontinuity.
struct TimeGrid {
    std::vector<double> times;

    int size() const { return static_cast<int>(times.size()); }
    double t_start() const { return times.front(); }
    double t_end() const { return times.back(); }

    static TimeGrid uniform(double t_start, double t_end, int n_samples);
    static TimeGrid for_protocol(double t_start, double t_end, int n_samples,
                                 const ProtocolSchedule& protocol);
};

enum class TraceSource { Analytic, Numeric };

// Stored energies per subsystem over a grid, in units of omega_b.
// e_m is empty for the direct scenario.
struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> e_b;
    std::vector<double> e_c;
    std::vector<double> e_m;
    TraceSource source = TraceSource::Numeric;

    bool has_mediator() const { return !e_m.empty(); }
    int size() const { return static_cast<int>(times.size()); }

    // max_t |E_B + E_C (+ E_M)|; zero for exact resonant dynamics.
    double max_conservation_residual() const;

    // Largest violation of 0 <= E_B <= omega_b, -omega_b <= E_C <= 0,
    // 0 <= E_M <= omega_b; zero when all bounds hold.
    double max_bound_violation(double omega_b = 1.0) const;
};

// Energy and time of a stored-energy maximum in the battery.
struct TransferReport {
    double e_b_max = 0.0;   // units of omega_b
    double t_b_max = 0.0;   // units of 1/omega_b
    int k_index = 1;        // which maximum (1st by default)
    Scenario scenario = Scenario::Direct;
    // False when the trace had no interior maximum and the end-of-window
    // value is reported instead.
    bool interior_maximum = true;
};

// Per-channel maximum absolute deviations between two traces on one grid.
struct TraceComparison {
    double max_delta_e_b = 0.0;
    double max_delta_e_c = 0.0;
    double max_delta_e_m = 0.0;

    double max_delta() const;
    bool within(double tolerance) const { return max_delta() <= tolerance; }
};

// Requires identical grids (throws PreconditionError otherwise).
TraceComparison compare_traces(const EnergyTrace& a, const EnergyTrace& b);

} // namespace qbet
