// states.hpp — State vectors in the reduced and full bases

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qbet/system.hpp"

namespace qbet {

// Amplitudes over the single-excitation basis, ordered charger-excited
// first, battery-excited last:
//   dim 2: { |1_C 0_B>, |0_C 1_B> }
//   dim 3: { |1_C 0_M 0_B>, |0_C 1_M 0_B>, |0_C 0_M 1_B> }
struct ReducedState {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    double norm() const { return amplitudes.norm(); }
};

// Amplitudes over the full tensor-product basis, big-endian C (x) M (x) B
// with the local ordering (|0>, |1>); dim 4 (direct) or 8 (mediated).
struct FullState {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    double norm() const { return amplitudes.norm(); }
};

// Indices of the single-excitation basis states in the full space, in the
// same order as the reduced basis (C-excited, [M-excited], B-excited).
std::vector<int> single_excitation_indices(int n_sites);

// Reduced-order amplitudes extracted from a full-space vector.
Eigen::VectorXcd sector_amplitudes(const Eigen::VectorXcd& full, int n_sites);

// Total population outside the single-excitation sector.
double out_of_sector_population(const Eigen::VectorXcd& full, int n_sites);

// The designated initial state (charger excited, everything else in the
// ground state) in the space selected by spec.model_variant.
Eigen::VectorXcd initial_state(const SystemSpec& spec);

} // namespace qbet
