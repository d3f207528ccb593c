// switching.hpp — Piecewise-constant coupling profiles and their running integrals

#pragma once

#include <optional>
#include <vector>

#include "qbet/system.hpp"

namespace qbet {

// One on-window of a switching function.
struct SwitchWindow {
    double t_on = 0.0;
    double t_off = 0.0;
    double amplitude = 1.0;

    bool operator==(const SwitchWindow&) const = default;
};

// Piecewise-constant switching function: 0 outside the windows, the window
// amplitude inside. Right-continuous at t_on; value 0 at t = t_off.
struct SwitchingSchedule {
    std::vector<SwitchWindow> windows; // sorted, non-overlapping

    // Throws PreconditionError when windows overlap or are unsorted.
    void validate() const;

    double evaluate(double t) const;

    // Left-continuous variant: the window amplitude for t in (t_on, t_off].
    // Used when a value at the right edge of a segment is needed.
    double evaluate_from_below(double t) const;

    // True when every window has amplitude exactly 1 (the closed forms
    // require pure on/off steps).
    bool is_unit_step() const;

    // Largest t_off over all windows; 0 if there are none.
    double last_off() const;

    // All window edges, sorted.
    std::vector<double> boundaries() const;

    SwitchingSchedule shifted(double delay) const;

    static SwitchingSchedule single_window(double t_on, double t_off, double amplitude = 1.0);
};

// scale * g * integral_0^t f(t') dt', computed exactly from the window list.
double angle(const SwitchingSchedule& schedule, double t, double g, double scale = 1.0);

// How tau is chosen when building a protocol schedule.
class TauChoice {
public:
    static TauChoice first_maximum() { return TauChoice{}; }
    static TauChoice explicit_value(double tau);

    bool is_first_maximum() const { return !tau_.has_value(); }
    double value() const; // only valid for explicit_value

private:
    TauChoice() = default;
    std::optional<double> tau_;
};

// The switching functions of one transfer protocol. For Direct, `cm` plays
// the role of the single f(t) and `bm` is absent; for CoherentMediated the
// two schedules are identical; for TwoStepMediated `bm` is `cm` shifted by
// sigma.
struct ProtocolSchedule {
    Scenario scenario = Scenario::Direct;
    SwitchingSchedule cm;
    std::optional<SwitchingSchedule> bm;
    double tau = 0.0;
    std::optional<double> sigma;

    // True when the two-step legs are comfortably separated (sigma >= 5 tau).
    // Below that the schedule is still valid, just worth a warning.
    bool well_separated() const;

    // Latest switch-off over both schedules.
    double last_off() const;

    // Switching amplitudes (f1, f2) at time t; f2 is 0 for Direct.
    std::pair<double, double> amplitudes_at(double t) const;

    std::vector<double> boundaries() const;
};

// Builds the paper-style protocol: FirstMaximum picks tau = pi/(2g) for
// Direct and each two-step leg, tau = pi/(sqrt(2) g) for CoherentMediated.
// sigma (the delay of the second leg) is required exactly for TwoStepMediated
// and must satisfy sigma >= tau.
ProtocolSchedule make_protocol_schedule(Scenario scenario, double g, TauChoice tau_choice,
                                        std::optional<double> sigma = std::nullopt);

} // namespace qbet
