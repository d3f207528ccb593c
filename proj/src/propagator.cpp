#include "qbet/propagator.hpp"

#include <cmath>
#include <complex>

namespace qbet {

namespace {

using namespace std::complex_literals;

int state_dim(const SystemSpec& spec) {
    return spec.model_variant == ModelVariant::Reduced ? spec.reduced_dim() : spec.full_dim();
}

void check_propagation_inputs(const SystemSpec& spec, const ProtocolSchedule& protocol,
                              const TimeGrid& grid, const Eigen::VectorXcd& initial) {
    spec.validate();
    protocol.cm.validate();
    if (protocol.bm)
        protocol.bm->validate();
    if (protocol.scenario != spec.scenario)
        throw ConfigError("propagate: protocol and spec disagree on the scenario");
    if (grid.size() < 2)
        throw PreconditionError("propagate: grid needs at least 2 samples");
    if (initial.size() != state_dim(spec))
        throw PreconditionError("propagate: initial state dimension does not match the model");
    if (std::abs(initial.norm() - 1.0) > 1e-10)
        throw PreconditionError("propagate: initial state is not normalized");
}

// sigma_z diagonal per subsystem in the active basis; site 0 = C, last = B.
Eigen::VectorXd subsystem_sigma_z(const SystemSpec& spec, int site) {
    const int n = spec.site_count();
    if (spec.model_variant != ModelVariant::Reduced)
        return sigma_z_diagonal(n, site);
    // Reduced basis state k has exactly site k excited.
    Eigen::VectorXd diag = Eigen::VectorXd::Constant(n, -1.0);
    diag(site) = 1.0;
    return diag;
}

double subsystem_spacing(const SystemSpec& spec, int site) {
    if (site == 0)
        return spec.omega_c;
    if (site == spec.site_count() - 1)
        return spec.omega_b;
    return *spec.omega_m;
}

} // namespace

double Trajectory::max_norm_drift() const {
    if (states.empty())
        return 0.0;
    const double reference = states.front().norm();
    double drift = 0.0;
    for (const auto& state : states)
        drift = std::max(drift, std::abs(state.norm() - reference));
    return drift;
}

Trajectory propagate_piecewise(const SystemSpec& spec, const ProtocolSchedule& protocol,
                               const TimeGrid& grid, const Eigen::VectorXcd& initial) {
    check_propagation_inputs(spec, protocol, grid, initial);

    Trajectory trajectory;
    trajectory.variant = spec.model_variant;
    trajectory.times = grid.times;
    trajectory.states.reserve(grid.size());
    trajectory.states.push_back(initial);

    // Window edges inside the grid span; the Hamiltonian is constant on the
    // segments between them.
    std::vector<double> edges;
    for (double edge : protocol.boundaries())
        if (edge > grid.t_start() && edge < grid.t_end())
            edges.push_back(edge);

    // Every sample inside a segment is computed by one exact exponential
    // from the segment's anchor state, so per-sample errors do not chain;
    // the state is only re-anchored at the few window edges.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver;
    bool decomposed = false;
    double anchor_t = grid.t_start();
    Eigen::VectorXcd anchor_state = initial;
    Eigen::VectorXcd anchor_in_eigenbasis;

    std::size_t gi = 1, ei = 0;
    while (gi < grid.times.size() || ei < edges.size()) {
        const bool take_edge =
            ei < edges.size() && (gi >= grid.times.size() || edges[ei] <= grid.times[gi]);
        const double t = take_edge ? edges[ei] : grid.times[gi];

        if (!decomposed) {
            const double t_mid = 0.5 * (anchor_t + t);
            const auto f = protocol.amplitudes_at(t_mid);
            solver.compute(build_hamiltonian(spec, f.first, f.second, t_mid).entries);
            if (solver.info() != Eigen::Success)
                throw AccuracyError("propagate_piecewise: eigendecomposition failed");
            anchor_in_eigenbasis = solver.eigenvectors().adjoint() * anchor_state;
            decomposed = true;
        }

        Eigen::VectorXcd state = anchor_state;
        if (t > anchor_t) {
            const Eigen::VectorXcd phases =
                (-1i * solver.eigenvalues().array() * (t - anchor_t)).exp().matrix();
            state = solver.eigenvectors() * phases.cwiseProduct(anchor_in_eigenbasis);
        }

        if (take_edge) {
            anchor_t = t;
            anchor_state = state;
            decomposed = false;
            if (gi < grid.times.size() && grid.times[gi] == t) {
                trajectory.states.push_back(std::move(state));
                ++gi;
            }
            ++ei;
        } else {
            trajectory.states.push_back(std::move(state));
            ++gi;
        }
    }
    return trajectory;
}

namespace {

void check_rk4_step(const TimeGrid& grid, double step) {
    if (!(step > 0.0))
        throw PreconditionError("propagate_rk4: step must be positive");
    if (step > (grid.t_end() - grid.t_start()) / 100.0)
        throw PreconditionError("propagate_rk4: step too coarse (must be <= span/100)");
}

void check_rk4_drift(const Trajectory& trajectory) {
    const double drift = trajectory.max_norm_drift();
    if (drift > 1e-6)
        throw AccuracyError("propagate_rk4: norm drifted by " + std::to_string(drift) +
                            "; use a smaller step");
}

// One classic RK4 step of psi' = A(t) psi.
template <typename EvalA>
Eigen::VectorXcd rk4_step(const Eigen::VectorXcd& psi, double t, double h, EvalA&& a_at) {
    const Eigen::VectorXcd k1 = a_at(t) * psi;
    const Eigen::VectorXcd k2 = a_at(t + 0.5 * h) * (psi + 0.5 * h * k1).eval();
    const Eigen::VectorXcd k3 = a_at(t + 0.5 * h) * (psi + 0.5 * h * k2).eval();
    const Eigen::VectorXcd k4 = a_at(t + h) * (psi + h * k3).eval();
    return psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

} // namespace

Trajectory propagate_rk4(const SystemSpec& spec, const ProtocolSchedule& protocol,
                         const TimeGrid& grid, double step, const Eigen::VectorXcd& initial) {
    check_propagation_inputs(spec, protocol, grid, initial);
    check_rk4_step(grid, step);

    Trajectory trajectory;
    trajectory.variant = spec.model_variant;
    trajectory.times = grid.times;
    trajectory.states.reserve(grid.size());
    trajectory.states.push_back(initial);

    Eigen::VectorXcd state = initial;
    for (int i = 1; i < grid.size(); ++i) {
        const double dt = grid.times[i] - grid.times[i - 1];
        const double t_mid = grid.times[i - 1] + 0.5 * dt;
        const auto f = protocol.amplitudes_at(t_mid);
        const Eigen::MatrixXcd a = -1i * build_hamiltonian(spec, f.first, f.second, t_mid).entries;
        const int n_sub = std::max(1, static_cast<int>(std::ceil(dt / step)));
        const double h = dt / n_sub;
        for (int s = 0; s < n_sub; ++s)
            state = rk4_step(state, grid.times[i - 1] + s * h, h,
                             [&](double) -> const Eigen::MatrixXcd& { return a; });
        trajectory.states.push_back(state);
    }
    check_rk4_drift(trajectory);
    return trajectory;
}

Trajectory propagate_rk4(const SystemSpec& spec, const std::function<double(double)>& f1,
                         const std::function<double(double)>& f2, const TimeGrid& grid,
                         double step, const Eigen::VectorXcd& initial) {
    spec.validate();
    if (grid.size() < 2)
        throw PreconditionError("propagate_rk4: grid needs at least 2 samples");
    if (initial.size() != state_dim(spec))
        throw PreconditionError("propagate_rk4: initial state dimension does not match the model");
    check_rk4_step(grid, step);

    auto a_at = [&](double t) -> Eigen::MatrixXcd {
        return -1i * build_hamiltonian(spec, f1(t), spec.mediated() ? f2(t) : 0.0, t).entries;
    };

    Trajectory trajectory;
    trajectory.variant = spec.model_variant;
    trajectory.times = grid.times;
    trajectory.states.reserve(grid.size());
    trajectory.states.push_back(initial);

    Eigen::VectorXcd state = initial;
    for (int i = 1; i < grid.size(); ++i) {
        const double dt = grid.times[i] - grid.times[i - 1];
        const int n_sub = std::max(1, static_cast<int>(std::ceil(dt / step)));
        const double h = dt / n_sub;
        for (int s = 0; s < n_sub; ++s)
            state = rk4_step(state, grid.times[i - 1] + s * h, h, a_at);
        trajectory.states.push_back(state);
    }
    check_rk4_drift(trajectory);
    return trajectory;
}

EnergyTrace energies_from_states(const SystemSpec& spec, const Trajectory& trajectory) {
    spec.validate();
    const int n_sites = spec.site_count();
    const int dim = spec.model_variant == trajectory.variant ? state_dim(spec) : -1;
    if (dim < 0 || trajectory.states.empty() || trajectory.states.front().size() != dim)
        throw PreconditionError("energies_from_states: trajectory does not match the spec");

    std::vector<Eigen::VectorXd> sz;
    sz.reserve(n_sites);
    for (int site = 0; site < n_sites; ++site)
        sz.push_back(subsystem_sigma_z(spec, site));

    EnergyTrace trace;
    trace.source = TraceSource::Numeric;
    trace.times = trajectory.times;
    const int n = static_cast<int>(trajectory.states.size());
    trace.e_b.resize(n);
    trace.e_c.resize(n);
    if (spec.mediated())
        trace.e_m.resize(n);

    // E_X(t) = (omega_X / 2) (<sigma_z^X>(t) - <sigma_z^X>(0)).
    std::vector<double> reference(n_sites);
    const Eigen::VectorXd p0 = trajectory.states.front().cwiseAbs2();
    for (int site = 0; site < n_sites; ++site)
        reference[site] = sz[site].dot(p0);

    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd p = trajectory.states[i].cwiseAbs2();
        for (int site = 0; site < n_sites; ++site) {
            const double e =
                0.5 * subsystem_spacing(spec, site) * (sz[site].dot(p) - reference[site]);
            if (site == 0)
                trace.e_c[i] = e;
            else if (site == n_sites - 1)
                trace.e_b[i] = e;
            else
                trace.e_m[i] = e;
        }
    }
    return trace;
}

double interaction_energy(const SystemSpec& spec, const ProtocolSchedule& protocol,
                          const Eigen::VectorXcd& state, double t) {
    const auto f = protocol.amplitudes_at(t);
    const HamiltonianMatrix v = build_coupling(spec, f.first, f.second, t);
    if (state.size() != v.dim())
        throw PreconditionError("interaction_energy: state dimension mismatch");
    return (state.adjoint() * v.entries * state)(0).real();
}

namespace {

// Parabola through (t[i-1..i+1], y[i-1..i+1]); grid may be non-uniform.
CurveMaximum refine_parabolic(const std::vector<double>& times,
                              const std::vector<double>& values, int i) {
    const double d1 = times[i] - times[i - 1];
    const double d2 = times[i + 1] - times[i];
    const double r1 = values[i - 1] - values[i];
    const double r3 = values[i + 1] - values[i];
    const double denom = d1 * d2 * (d1 + d2);
    const double a = (d2 * r1 + d1 * r3) / denom;
    const double b = (d1 * d1 * r3 - d2 * d2 * r1) / denom;
    if (!(a < 0.0))
        return {times[i], values[i], true};
    const double t_star = std::clamp(times[i] - 0.5 * b / a, times[i - 1], times[i + 1]);
    return {t_star, values[i] - 0.25 * b * b / a, true};
}

} // namespace

CurveMaximum first_maximum(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size() || times.size() < 2)
        throw PreconditionError("first_maximum: need equally sized times/values, >= 2 samples");

    const int n = static_cast<int>(times.size());
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    // Wiggles below this are numerical noise, not structure.
    const double threshold = std::max(1e-9 * (*hi - *lo), 1e-14);

    int i = 1;
    while (i + 1 < n) {
        if (!(values[i] - values[i - 1] > threshold)) {
            ++i; // not a significant rise into i
            continue;
        }
        if (values[i] - values[i + 1] > threshold)
            return refine_parabolic(times, values, i); // clean interior peak
        if (values[i + 1] - values[i] > threshold) {
            ++i; // still rising
            continue;
        }
        // Flat within noise: walk the plateau and see how it ends.
        int j = i + 1;
        while (j + 1 < n && std::abs(values[j + 1] - values[i]) <= threshold)
            ++j;
        if (j + 1 >= n || values[j + 1] < values[i] - threshold)
            return {times[i], values[i], true}; // plateau to the end, or a drop
        i = j + 1; // the shelf resumed rising
    }
    return {times.back(), values.back(), false};
}

TransferReport find_first_maximum(const EnergyTrace& trace, Scenario scenario) {
    const CurveMaximum peak = first_maximum(trace.times, trace.e_b);
    TransferReport report;
    report.e_b_max = peak.value;
    report.t_b_max = peak.t;
    report.k_index = 1;
    report.scenario = scenario;
    report.interior_maximum = peak.interior;
    return report;
}

} // namespace qbet
