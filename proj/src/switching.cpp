#include "qbet/switching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qbet {

void SwitchingSchedule::validate() const {
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (!(windows[i].t_on < windows[i].t_off))
            throw PreconditionError("SwitchingSchedule: window requires t_on < t_off");
        if (i > 0 && windows[i].t_on < windows[i - 1].t_off)
            throw PreconditionError("SwitchingSchedule: windows must be sorted and non-overlapping");
    }
}

double SwitchingSchedule::evaluate(double t) const {
    for (const auto& w : windows) {
        if (t < w.t_on)
            return 0.0;
        if (t < w.t_off)
            return w.amplitude;
    }
    return 0.0;
}

double SwitchingSchedule::evaluate_from_below(double t) const {
    for (const auto& w : windows) {
        if (t <= w.t_on)
            return 0.0;
        if (t <= w.t_off)
            return w.amplitude;
    }
    return 0.0;
}

bool SwitchingSchedule::is_unit_step() const {
    return std::all_of(windows.begin(), windows.end(),
                       [](const SwitchWindow& w) { return w.amplitude == 1.0; });
}

double SwitchingSchedule::last_off() const {
    return windows.empty() ? 0.0 : windows.back().t_off;
}

std::vector<double> SwitchingSchedule::boundaries() const {
    std::vector<double> edges;
    edges.reserve(2 * windows.size());
    for (const auto& w : windows) {
        edges.push_back(w.t_on);
        edges.push_back(w.t_off);
    }
    return edges;
}

SwitchingSchedule SwitchingSchedule::shifted(double delay) const {
    SwitchingSchedule out = *this;
    for (auto& w : out.windows) {
        w.t_on += delay;
        w.t_off += delay;
    }
    return out;
}

SwitchingSchedule SwitchingSchedule::single_window(double t_on, double t_off, double amplitude) {
    SwitchingSchedule schedule;
    schedule.windows.push_back({t_on, t_off, amplitude});
    schedule.validate();
    return schedule;
}

double angle(const SwitchingSchedule& schedule, double t, double g, double scale) {
    // Exact running integral of the step function from 0 to t; no
    // quadrature involved.
    double integral = 0.0;
    for (const auto& w : schedule.windows) {
        const double lo = std::max(w.t_on, 0.0);
        if (t <= lo)
            break;
        if (w.t_off <= lo)
            continue;
        integral += w.amplitude * (std::min(t, w.t_off) - lo);
    }
    return scale * g * integral;
}

TauChoice TauChoice::explicit_value(double tau) {
    if (!(tau > 0.0))
        throw PreconditionError("TauChoice: tau must be positive");
    TauChoice choice;
    choice.tau_ = tau;
    return choice;
}

double TauChoice::value() const {
    if (!tau_)
        throw PreconditionError("TauChoice: first-maximum choice has no explicit value");
    return *tau_;
}

bool ProtocolSchedule::well_separated() const {
    if (scenario != Scenario::TwoStepMediated || !sigma)
        return true;
    return *sigma >= 5.0 * tau;
}

double ProtocolSchedule::last_off() const {
    double t = cm.last_off();
    if (bm)
        t = std::max(t, bm->last_off());
    return t;
}

std::pair<double, double> ProtocolSchedule::amplitudes_at(double t) const {
    return {cm.evaluate(t), bm ? bm->evaluate(t) : 0.0};
}

std::vector<double> ProtocolSchedule::boundaries() const {
    std::vector<double> edges = cm.boundaries();
    if (bm) {
        const auto more = bm->boundaries();
        edges.insert(edges.end(), more.begin(), more.end());
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

ProtocolSchedule make_protocol_schedule(Scenario scenario, double g, TauChoice tau_choice,
                                        std::optional<double> sigma) {
    if (!(g > 0.0))
        throw ConfigError("make_protocol_schedule: coupling g must be positive");
    if (scenario == Scenario::TwoStepMediated && !sigma)
        throw ConfigError("make_protocol_schedule: two-step protocol requires sigma");

    double tau = 0.0;
    if (tau_choice.is_first_maximum()) {
        // Switch off exactly at the first stored-energy maximum.
        tau = scenario == Scenario::CoherentMediated
                  ? std::numbers::pi / (std::numbers::sqrt2 * g)
                  : std::numbers::pi / (2.0 * g);
    } else {
        tau = tau_choice.value();
    }

    ProtocolSchedule protocol;
    protocol.scenario = scenario;
    protocol.tau = tau;
    protocol.cm = SwitchingSchedule::single_window(0.0, tau);

    switch (scenario) {
    case Scenario::Direct:
        break;
    case Scenario::CoherentMediated:
        protocol.bm = protocol.cm;
        break;
    case Scenario::TwoStepMediated:
        if (!(*sigma >= tau))
            throw PreconditionError("make_protocol_schedule: two-step legs overlap (sigma < tau)");
        protocol.sigma = sigma;
        protocol.bm = protocol.cm.shifted(*sigma);
        break;
    }
    return protocol;
}

} // namespace qbet
