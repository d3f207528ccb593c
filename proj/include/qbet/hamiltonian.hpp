// hamiltonian.hpp — Hamiltonian assembly in the reduced and full bases

#pragma once

#include <Eigen/Dense>

#include "qbet/system.hpp"

namespace qbet {

// Dense Hermitian matrix (dim 2, 3, 4 or 8) with the time it was
// evaluated at; time dependence enters through the switching amplitudes.
struct HamiltonianMatrix {
    Eigen::MatrixXcd entries;
    double time_tag = 0.0;

    Eigen::Index dim() const { return entries.rows(); }
};

// 2x2 single-excitation Hamiltonian for the direct scenario:
//   [ (omega_c-omega_b)/2    g*f               ]
//   [  g*f                  -(omega_c-omega_b)/2 ]
HamiltonianMatrix build_reduced_direct(const SystemSpec& spec, double f_value,
                                       double time_tag = 0.0);

// 3x3 single-excitation Hamiltonian for the mediated scenarios. Resonant
// specs get a zero diagonal (the constant -omega_b/2 shift is dropped);
// detuned specs keep the displayed diagonal entries.
HamiltonianMatrix build_reduced_mediated(const SystemSpec& spec, double f_cm,
                                         double f_bm, double time_tag = 0.0);

// Full tensor-product Hamiltonian (dim 4 or 8). For Direct, f1 is the C-B
// switching amplitude and f2 is ignored; for mediated scenarios f1 = f_CM
// and f2 = f_BM. FullCounterRotating adds the sigma-sigma- / sigma+sigma+
// pair terms on every coupled bond with the same g*f amplitude.
HamiltonianMatrix build_full(const SystemSpec& spec, double f1, double f2 = 0.0,
                             double time_tag = 0.0);

// Hamiltonian in the space selected by spec.model_variant, switching
// amplitudes given per bond (direct uses f1 only).
HamiltonianMatrix build_hamiltonian(const SystemSpec& spec, double f1, double f2 = 0.0,
                                    double time_tag = 0.0);

// Coupling part only: build(spec, f1, f2) - build(spec, 0, 0).
HamiltonianMatrix build_coupling(const SystemSpec& spec, double f1, double f2 = 0.0,
                                 double time_tag = 0.0);

// Total excitation-number operator on the full space, sum_i |1><1|_i.
Eigen::MatrixXcd excitation_number_operator(int n_sites);

// Local sigma_z expectation helper: diagonal of sigma_z on `site` (0 = C)
// in the full space, as +/-1 per basis state.
Eigen::VectorXd sigma_z_diagonal(int n_sites, int site);

} // namespace qbet
