// analytic.hpp — Closed-form state evolution, stored energies and transfer times
//
// All operations here require a resonant spec and pure on/off step
// schedules; anything else belongs to the numerical propagator.

#pragma once

#include <optional>

#include "qbet/states.hpp"
#include "qbet/switching.hpp"
#include "qbet/trace.hpp"

namespace qbet {

struct DirectEnergies {
    double e_b = 0.0;
    double e_c = 0.0;
};

struct MediatedEnergies {
    double e_b = 0.0;
    double e_c = 0.0;
    double e_m = 0.0;
};

// State of the direct charger-battery pair at time t, starting from the
// charger-excited state: (cos phi(t), -i sin phi(t)).
ReducedState direct_state(const SystemSpec& spec, const ProtocolSchedule& protocol, double t);

// E_B = omega_b sin^2 phi(t), E_C = -E_B (exactly).
DirectEnergies direct_energies(const SystemSpec& spec, const ProtocolSchedule& protocol, double t);

// Stored energies for the delayed two-leg protocol. Requires non-overlapping
// legs and a complete first transfer (g tau = pi/2 mod pi); otherwise the
// closed form does not describe the dynamics and this throws.
MediatedEnergies two_step_energies(const SystemSpec& spec, const ProtocolSchedule& protocol,
                                   double t);

// State for the simultaneous protocol:
// ( [cos phi + 1]/2, -i sin phi / sqrt(2), [cos phi - 1]/2 ) with phi at
// scale sqrt(2).
ReducedState coherent_state(const SystemSpec& spec, const ProtocolSchedule& protocol, double t);

// E_B = omega_b [cos phi - 1]^2 / 4, E_M = omega_b sin^2 phi / 2,
// E_C = -(E_B + E_M).
MediatedEnergies coherent_energies(const SystemSpec& spec, const ProtocolSchedule& protocol,
                                   double t);

// Time of the k-th stored-energy maximum in the battery, assuming the
// coupling stays on long enough:
//   Direct:    t = k pi / (2g),          k >= 1
//   TwoStep:   t = k pi / (2g) + sigma,  k >= 1 (sigma required)
//   Coherent:  t = (2k+1) pi / (sqrt(2) g), k >= 0
// The maximum value is omega_b in all three protocols.
TransferReport transfer_time(Scenario scenario, double g, int k,
                             std::optional<double> sigma = std::nullopt,
                             double omega_b = 1.0);

// First physical maximum: k = 1 for Direct/TwoStep, k = 0 for Coherent.
TransferReport first_transfer_time(Scenario scenario, double g,
                                   std::optional<double> sigma = std::nullopt,
                                   double omega_b = 1.0);

// Closed-form energies sampled over a grid.
EnergyTrace analytic_trace(const SystemSpec& spec, const ProtocolSchedule& protocol,
                           const TimeGrid& grid);

} // namespace qbet
