#include "qbet/hamiltonian.hpp"

namespace qbet {

namespace {

using Matrix = Eigen::MatrixXcd;

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Local basis order (|0>, |1>) with sigma_z|0> = -|0>, sigma_z|1> = +|1>.
Matrix sigma_z_local() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = -1.0;
    m(1, 1) = 1.0;
    return m;
}

Matrix sigma_plus_local() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0; // |1><0|
    return m;
}

Matrix sigma_minus_local() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0; // |0><1|
    return m;
}

// Operator acting as `op` on `site` (0 = C, big-endian) and identity elsewhere.
Matrix on_site(const Matrix& op, int site, int n_sites) {
    Matrix out = Matrix::Identity(1, 1);
    for (int s = 0; s < n_sites; ++s)
        out = kron(out, s == site ? op : Matrix::Identity(2, 2));
    return out;
}

// Exchange coupling on a bond, optionally with the pair terms.
Matrix bond_coupling(int site_a, int site_b, int n_sites, bool counter_rotating) {
    const Matrix sp = sigma_plus_local();
    const Matrix sm = sigma_minus_local();
    Matrix v = on_site(sm, site_a, n_sites) * on_site(sp, site_b, n_sites) +
               on_site(sp, site_a, n_sites) * on_site(sm, site_b, n_sites);
    if (counter_rotating)
        v += on_site(sm, site_a, n_sites) * on_site(sm, site_b, n_sites) +
             on_site(sp, site_a, n_sites) * on_site(sp, site_b, n_sites);
    return v;
}

} // namespace

HamiltonianMatrix build_reduced_direct(const SystemSpec& spec, double f_value, double time_tag) {
    spec.validate();
    if (spec.scenario != Scenario::Direct)
        throw ConfigError("build_reduced_direct: spec is not a direct scenario");
    Matrix h = Matrix::Zero(2, 2);
    const double detuning_half = 0.5 * (spec.omega_c - spec.omega_b);
    h(0, 0) = detuning_half;
    h(1, 1) = -detuning_half;
    h(0, 1) = h(1, 0) = spec.g * f_value;
    return {h, time_tag};
}

HamiltonianMatrix build_reduced_mediated(const SystemSpec& spec, double f_cm, double f_bm,
                                         double time_tag) {
    spec.validate();
    if (spec.scenario == Scenario::Direct)
        throw ConfigError("build_reduced_mediated: spec is a direct scenario");
    Matrix h = Matrix::Zero(3, 3);
    if (!spec.resonant()) {
        // Displayed detuned diagonal; the resonant constant shift is dropped.
        const double omega_m = *spec.omega_m;
        h(0, 0) = 0.5 * (spec.omega_c - omega_m - spec.omega_b);
        h(1, 1) = 0.5 * (-spec.omega_c + omega_m - spec.omega_b);
        h(2, 2) = 0.5 * (-spec.omega_c - omega_m + spec.omega_b);
    }
    h(0, 1) = h(1, 0) = spec.g * f_cm;
    h(1, 2) = h(2, 1) = spec.g * f_bm;
    return {h, time_tag};
}

HamiltonianMatrix build_full(const SystemSpec& spec, double f1, double f2, double time_tag) {
    spec.validate();
    if (spec.model_variant == ModelVariant::Reduced)
        throw ConfigError("build_full: spec selects the reduced model");
    const int n = spec.site_count();
    const bool cr = spec.model_variant == ModelVariant::FullCounterRotating;
    const Matrix sz = sigma_z_local();

    Matrix h = 0.5 * spec.omega_c * on_site(sz, 0, n);
    if (spec.mediated()) {
        h += 0.5 * (*spec.omega_m) * on_site(sz, 1, n);
        h += 0.5 * spec.omega_b * on_site(sz, 2, n);
        h += spec.g * f1 * bond_coupling(0, 1, n, cr); // C-M
        h += spec.g * f2 * bond_coupling(2, 1, n, cr); // B-M
    } else {
        h += 0.5 * spec.omega_b * on_site(sz, 1, n);
        h += spec.g * f1 * bond_coupling(0, 1, n, cr); // C-B
    }
    return {h, time_tag};
}

HamiltonianMatrix build_hamiltonian(const SystemSpec& spec, double f1, double f2,
                                    double time_tag) {
    if (spec.model_variant != ModelVariant::Reduced)
        return build_full(spec, f1, f2, time_tag);
    if (spec.mediated())
        return build_reduced_mediated(spec, f1, f2, time_tag);
    return build_reduced_direct(spec, f1, time_tag);
}

HamiltonianMatrix build_coupling(const SystemSpec& spec, double f1, double f2, double time_tag) {
    HamiltonianMatrix on = build_hamiltonian(spec, f1, f2, time_tag);
    const HamiltonianMatrix off = build_hamiltonian(spec, 0.0, 0.0, time_tag);
    on.entries -= off.entries;
    return on;
}

Eigen::MatrixXcd excitation_number_operator(int n_sites) {
    const int dim = 1 << n_sites;
    Eigen::MatrixXcd n_op = Eigen::MatrixXcd::Zero(dim, dim);
    for (int idx = 0; idx < dim; ++idx)
        n_op(idx, idx) = static_cast<double>(__builtin_popcount(static_cast<unsigned>(idx)));
    return n_op;
}

Eigen::VectorXd sigma_z_diagonal(int n_sites, int site) {
    const int dim = 1 << n_sites;
    const int bit = 1 << (n_sites - 1 - site);
    Eigen::VectorXd diag(dim);
    for (int idx = 0; idx < dim; ++idx)
        diag(idx) = (idx & bit) ? 1.0 : -1.0;
    return diag;
}

} // namespace qbet
