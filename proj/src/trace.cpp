#include "qbet/trace.hpp"

#include <algorithm>
#include <cmath>

#include "qbet/errors.hpp"

namespace qbet {

TimeGrid TimeGrid::uniform(double t_start, double t_end, int n_samples) {
    if (n_samples < 2)
        throw PreconditionError("TimeGrid: need at least 2 samples");
    if (!(t_start < t_end))
        throw PreconditionError("TimeGrid: t_start must precede t_end");
    TimeGrid grid;
    grid.times.resize(n_samples);
    const double dt = (t_end - t_start) / (n_samples - 1);
    for (int i = 0; i < n_samples; ++i)
        grid.times[i] = t_start + i * dt;
    grid.times.front() = t_start;
    grid.times.back() = t_end;
    return grid;
}

TimeGrid TimeGrid::for_protocol(double t_start, double t_end, int n_samples,
                                const ProtocolSchedule& protocol) {
    TimeGrid grid = uniform(t_start, t_end, n_samples);
    auto& ts = grid.times;
    const double spacing = (t_end - t_start) / (n_samples - 1);
    const double snap_tol = std::min(spacing / 4.0, 1e-9 * (t_end - t_start));

    for (double edge : protocol.boundaries()) {
        if (edge <= t_start || edge >= t_end)
            continue;
        auto it = std::lower_bound(ts.begin(), ts.end(), edge);
        // Snap a nearby uniform sample onto the edge instead of creating a
        // near-duplicate pair; otherwise insert the edge.
        auto nearest = it;
        if (it != ts.begin() && (it == ts.end() || *it - edge > edge - *(it - 1)))
            nearest = it - 1;
        if (nearest != ts.begin() && nearest != ts.end() - 1 &&
            std::abs(*nearest - edge) <= snap_tol) {
            *nearest = edge;
        } else if (*nearest != edge) {
            ts.insert(it, edge);
        }
    }
    return grid;
}

double EnergyTrace::max_conservation_residual() const {
    double worst = 0.0;
    for (int i = 0; i < size(); ++i) {
        const double sum = e_b[i] + e_c[i] + (has_mediator() ? e_m[i] : 0.0);
        worst = std::max(worst, std::abs(sum));
    }
    return worst;
}

double EnergyTrace::max_bound_violation(double omega_b) const {
    double worst = 0.0;
    auto out_of = [&worst](double value, double lo, double hi) {
        if (value < lo)
            worst = std::max(worst, lo - value);
        if (value > hi)
            worst = std::max(worst, value - hi);
    };
    for (int i = 0; i < size(); ++i) {
        out_of(e_b[i], 0.0, omega_b);
        out_of(e_c[i], -omega_b, 0.0);
        if (has_mediator())
            out_of(e_m[i], 0.0, omega_b);
    }
    return worst;
}

double TraceComparison::max_delta() const {
    return std::max({max_delta_e_b, max_delta_e_c, max_delta_e_m});
}

TraceComparison compare_traces(const EnergyTrace& a, const EnergyTrace& b) {
    if (a.times != b.times)
        throw PreconditionError("compare_traces: traces use different grids");
    if (a.has_mediator() != b.has_mediator())
        throw PreconditionError("compare_traces: traces have different channels");
    TraceComparison cmp;
    for (int i = 0; i < a.size(); ++i) {
        cmp.max_delta_e_b = std::max(cmp.max_delta_e_b, std::abs(a.e_b[i] - b.e_b[i]));
        cmp.max_delta_e_c = std::max(cmp.max_delta_e_c, std::abs(a.e_c[i] - b.e_c[i]));
        if (a.has_mediator())
            cmp.max_delta_e_m = std::max(cmp.max_delta_e_m, std::abs(a.e_m[i] - b.e_m[i]));
    }
    return cmp;
}

} // namespace qbet
