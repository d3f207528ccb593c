#include "qbet/analytic.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace qbet {

namespace {

using namespace std::complex_literals;

void require_analytic(const SystemSpec& spec, const ProtocolSchedule& protocol,
                      Scenario expected) {
    spec.validate();
    if (spec.scenario != expected || protocol.scenario != expected)
        throw ConfigError(std::string("analytic: expected ") + to_string(expected) +
                          " scenario");
    if (!spec.resonant())
        throw UnsupportedByAnalytic("analytic: only resonant systems have closed forms");
    if (!protocol.cm.is_unit_step() || (protocol.bm && !protocol.bm->is_unit_step()))
        throw UnsupportedByAnalytic("analytic: schedules must be pure on/off steps");
}

// The two-step closed form assumes the first leg transfers completely.
void require_complete_first_leg(double g, double tau) {
    const double s = std::sin(g * tau);
    if (std::abs(s * s - 1.0) > 1e-12)
        throw UnsupportedByAnalytic(
            "two_step_energies: first leg is not a complete transfer (g tau != pi/2 mod pi); "
            "use the numerical propagator");
}

void require_separated_legs(const ProtocolSchedule& protocol) {
    if (!protocol.bm || !protocol.sigma)
        throw ConfigError("two_step_energies: protocol has no delayed second leg");
    if (!(*protocol.sigma >= protocol.tau))
        throw PreconditionError("two_step_energies: legs overlap (sigma < tau)");
}

} // namespace

ReducedState direct_state(const SystemSpec& spec, const ProtocolSchedule& protocol, double t) {
    require_analytic(spec, protocol, Scenario::Direct);
    const double phi = angle(protocol.cm, t, spec.g);
    Eigen::VectorXcd amplitudes(2);
    amplitudes(0) = std::cos(phi);
    amplitudes(1) = -1i * std::sin(phi);
    return {amplitudes, t};
}

DirectEnergies direct_energies(const SystemSpec& spec, const ProtocolSchedule& protocol,
                               double t) {
    require_analytic(spec, protocol, Scenario::Direct);
    const double s = std::sin(angle(protocol.cm, t, spec.g));
    const double e_b = spec.omega_b * s * s;
    return {e_b, -e_b};
}

MediatedEnergies two_step_energies(const SystemSpec& spec, const ProtocolSchedule& protocol,
                                   double t) {
    require_analytic(spec, protocol, Scenario::TwoStepMediated);
    require_separated_legs(protocol);
    require_complete_first_leg(spec.g, protocol.tau);
    const double s_cm = std::sin(angle(protocol.cm, t, spec.g));
    const double s_bm = std::sin(angle(*protocol.bm, t, spec.g));
    MediatedEnergies e;
    e.e_b = spec.omega_b * s_bm * s_bm;
    e.e_c = -spec.omega_b * s_cm * s_cm;
    e.e_m = spec.omega_b * (s_cm * s_cm - s_bm * s_bm);
    return e;
}

ReducedState coherent_state(const SystemSpec& spec, const ProtocolSchedule& protocol, double t) {
    require_analytic(spec, protocol, Scenario::CoherentMediated);
    if (!protocol.bm || protocol.bm->windows != protocol.cm.windows)
        throw ConfigError("coherent_state: the two couplings must share one schedule");
    const double phi = angle(protocol.cm, t, spec.g, std::numbers::sqrt2);
    Eigen::VectorXcd amplitudes(3);
    amplitudes(0) = 0.5 * (std::cos(phi) + 1.0);
    amplitudes(1) = -1i * std::sin(phi) / std::numbers::sqrt2;
    amplitudes(2) = 0.5 * (std::cos(phi) - 1.0);
    return {amplitudes, t};
}

MediatedEnergies coherent_energies(const SystemSpec& spec, const ProtocolSchedule& protocol,
                                   double t) {
    require_analytic(spec, protocol, Scenario::CoherentMediated);
    if (!protocol.bm || protocol.bm->windows != protocol.cm.windows)
        throw ConfigError("coherent_energies: the two couplings must share one schedule");
    const double phi = angle(protocol.cm, t, spec.g, std::numbers::sqrt2);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    MediatedEnergies e;
    e.e_b = spec.omega_b * (0.5 * c - 0.5) * (0.5 * c - 0.5);
    e.e_c = spec.omega_b * (0.25 * c * c + 0.5 * c - 0.75);
    e.e_m = 0.5 * spec.omega_b * s * s;
    return e;
}

TransferReport transfer_time(Scenario scenario, double g, int k, std::optional<double> sigma,
                             double omega_b) {
    if (!(g > 0.0))
        throw PreconditionError("transfer_time: coupling g must be positive");
    TransferReport report;
    report.scenario = scenario;
    report.k_index = k;
    report.e_b_max = omega_b;
    switch (scenario) {
    case Scenario::Direct:
        if (k < 1)
            throw PreconditionError("transfer_time: direct maxima require k >= 1");
        report.t_b_max = k * std::numbers::pi / (2.0 * g);
        break;
    case Scenario::TwoStepMediated:
        if (k < 1)
            throw PreconditionError("transfer_time: two-step maxima require k >= 1");
        if (!sigma)
            throw ConfigError("transfer_time: two-step requires sigma");
        report.t_b_max = k * std::numbers::pi / (2.0 * g) + *sigma;
        break;
    case Scenario::CoherentMediated:
        if (k < 0)
            throw PreconditionError("transfer_time: coherent maxima require k >= 0");
        report.t_b_max = (2.0 * k + 1.0) * std::numbers::pi / (std::numbers::sqrt2 * g);
        break;
    }
    return report;
}

TransferReport first_transfer_time(Scenario scenario, double g, std::optional<double> sigma,
                                   double omega_b) {
    const int k = scenario == Scenario::CoherentMediated ? 0 : 1;
    return transfer_time(scenario, g, k, sigma, omega_b);
}

EnergyTrace analytic_trace(const SystemSpec& spec, const ProtocolSchedule& protocol,
                           const TimeGrid& grid) {
    EnergyTrace trace;
    trace.source = TraceSource::Analytic;
    trace.times = grid.times;
    const int n = grid.size();
    trace.e_b.resize(n);
    trace.e_c.resize(n);
    if (spec.mediated())
        trace.e_m.resize(n);

    for (int i = 0; i < n; ++i) {
        const double t = grid.times[i];
        switch (spec.scenario) {
        case Scenario::Direct: {
            const auto e = direct_energies(spec, protocol, t);
            trace.e_b[i] = e.e_b;
            trace.e_c[i] = e.e_c;
            break;
        }
        case Scenario::TwoStepMediated: {
            const auto e = two_step_energies(spec, protocol, t);
            trace.e_b[i] = e.e_b;
            trace.e_c[i] = e.e_c;
            trace.e_m[i] = e.e_m;
            break;
        }
        case Scenario::CoherentMediated: {
            const auto e = coherent_energies(spec, protocol, t);
            trace.e_b[i] = e.e_b;
            trace.e_c[i] = e.e_c;
            trace.e_m[i] = e.e_m;
            break;
        }
        }
    }
    return trace;
}

} // namespace qbet
