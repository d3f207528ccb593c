// propagator.hpp — Numerical evolution and the observable/comparison layer
//
// Two independent routes: exact per-segment propagation through the
// eigendecomposition of the piecewise-constant Hamiltonian, and a classic
// fixed-step 4th-order integrator. Both work on reduced and full models,
// resonant or detuned.

#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qbet/hamiltonian.hpp"
#include "qbet/states.hpp"
#include "qbet/switching.hpp"
#include "qbet/trace.hpp"

namespace qbet {

// States at every grid sample, in the space selected by the spec's
// model variant.
struct Trajectory {
    ModelVariant variant = ModelVariant::Reduced;
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;

    // max_i |  ||state_i|| - ||state_0||  |; never corrected, only reported.
    double max_norm_drift() const;
};

// Exact propagation: on every grid interval (the grid contains all window
// edges, so the Hamiltonian is constant there) applies exp(-i H dt) built
// from the Hermitian eigendecomposition.
Trajectory propagate_piecewise(const SystemSpec& spec, const ProtocolSchedule& protocol,
                               const TimeGrid& grid, const Eigen::VectorXcd& initial);

// Fixed-step classic RK4 for i d/dt psi = H(t) psi. Each grid interval is
// subdivided into ceil(dt/step) equal substeps. Throws AccuracyError when
// the norm drifts by more than 1e-6 over the run.
Trajectory propagate_rk4(const SystemSpec& spec, const ProtocolSchedule& protocol,
                         const TimeGrid& grid, double step, const Eigen::VectorXcd& initial);

// RK4 for arbitrary coupling profiles f1(t), f2(t) (f2 ignored for Direct).
// Profiles must be continuous inside every grid interval; discontinuities
// belong on grid points.
Trajectory propagate_rk4(const SystemSpec& spec,
                         const std::function<double(double)>& f1,
                         const std::function<double(double)>& f2, const TimeGrid& grid,
                         double step, const Eigen::VectorXcd& initial);

// Stored energies E_X(t) = <H_X>(t) - <H_X>(0) along a trajectory whose
// first state is the t = 0 reference.
EnergyTrace energies_from_states(const SystemSpec& spec, const Trajectory& trajectory);

// Expectation of the coupling part of the Hamiltonian in the given state;
// zero at all times for the resonant protocols.
double interaction_energy(const SystemSpec& spec, const ProtocolSchedule& protocol,
                          const Eigen::VectorXcd& state, double t);

// First interior maximum of a sampled curve, refined by a three-point
// parabolic fit. Falls back to the end-of-window value (interior = false)
// for monotone or flat data.
struct CurveMaximum {
    double t = 0.0;
    double value = 0.0;
    bool interior = false;
};
CurveMaximum first_maximum(const std::vector<double>& times, const std::vector<double>& values);

// First maximum of E_B in a trace, as a TransferReport.
TransferReport find_first_maximum(const EnergyTrace& trace, Scenario scenario);

} // namespace qbet
