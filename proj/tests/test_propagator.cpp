#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qbet/analytic.hpp"
#include "qbet/propagator.hpp"

using namespace qbet;
using namespace std::complex_literals;
using std::numbers::pi;
using std::numbers::sqrt2;

namespace {

constexpr double g = 0.05;

double max_state_deviation(const Trajectory& a, const Trajectory& b) {
    REQUIRE(a.states.size() == b.states.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i)
        worst = std::max(worst, (a.states[i] - b.states[i]).cwiseAbs().maxCoeff());
    return worst;
}

} // namespace

TEST_CASE("time grids") {
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 1.0, 1), PreconditionError);
    CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1.0, 10), PreconditionError);

    const auto protocol = make_protocol_schedule(Scenario::TwoStepMediated, g,
                                                 TauChoice::first_maximum(), 2.5 / g);
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 120.0, 500, protocol);
    CHECK(std::is_sorted(grid.times.begin(), grid.times.end()));
    for (int i = 1; i < grid.size(); ++i)
        CHECK(grid.times[i] > grid.times[i - 1]);
    // Every window edge inside the span is a sample, exactly.
    for (double edge : protocol.boundaries()) {
        if (edge <= 0.0 || edge >= 120.0)
            continue;
        CHECK(std::find(grid.times.begin(), grid.times.end(), edge) != grid.times.end());
    }
}

TEST_CASE("piecewise propagation reproduces the Rabi-like rotation") {
    // Coupling held on over the whole span: state (cos gt, -i sin gt).
    const auto spec = SystemSpec::direct(g);
    const auto protocol =
        make_protocol_schedule(Scenario::Direct, g, TauChoice::explicit_value(1000.0));
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 60.0, 301, protocol);
    const Trajectory trajectory = propagate_piecewise(spec, protocol, grid, initial_state(spec));

    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid.times[i];
        CHECK(std::abs(trajectory.states[i](0) - std::cos(g * t)) <= 1e-12);
        CHECK(std::abs(trajectory.states[i](1) - (-1i * std::sin(g * t))) <= 1e-12);
    }
    CHECK(trajectory.max_norm_drift() <= 1e-12);
}

TEST_CASE("no coupling means no evolution in the reduced resonant model") {
    const auto spec = SystemSpec::direct(g);
    ProtocolSchedule idle;
    idle.scenario = Scenario::Direct;
    idle.tau = 0.0; // no windows at all
    const TimeGrid grid = TimeGrid::uniform(0.0, 50.0, 101);

    const Trajectory exact = propagate_piecewise(spec, idle, grid, initial_state(spec));
    const Trajectory integrated = propagate_rk4(spec, idle, grid, 0.25, initial_state(spec));
    for (const auto& trajectory : {exact, integrated})
        for (const auto& state : trajectory.states) {
            CHECK(std::abs(state(0) - 1.0) <= 1e-14);
            CHECK(std::abs(state(1)) <= 1e-14);
        }
}

TEST_CASE("full model with pair terms stays on the reduced dynamics (dim 4)") {
    const auto reduced_spec = SystemSpec::direct(g);
    const auto full_spec = SystemSpec::direct(g, ModelVariant::FullCounterRotating);
    const auto protocol = make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 501, protocol);

    const Trajectory full = propagate_piecewise(full_spec, protocol, grid, initial_state(full_spec));

    for (int i = 0; i < grid.size(); ++i) {
        const auto expected = direct_state(reduced_spec, protocol, grid.times[i]);
        const Eigen::VectorXcd sector = sector_amplitudes(full.states[i], 2);
        CHECK((sector - expected.amplitudes).cwiseAbs().maxCoeff() <= 1e-10);
        CHECK(out_of_sector_population(full.states[i], 2) <= 1e-10);
    }
}

TEST_CASE("rk4 agrees with the exact propagator on step schedules") {
    const auto spec = SystemSpec::direct(g);
    const auto protocol = make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 201, protocol);

    const Trajectory exact = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const Trajectory integrated = propagate_rk4(spec, protocol, grid, 1e-3, initial_state(spec));
    CHECK(max_state_deviation(exact, integrated) <= 1e-8);
}

TEST_CASE("rk4 error scales as the fourth power of the step") {
    const auto spec = SystemSpec::direct(g);
    const double tau = pi / (2.0 * g);
    const auto protocol =
        make_protocol_schedule(Scenario::Direct, g, TauChoice::explicit_value(tau));
    const TimeGrid grid = TimeGrid::uniform(0.0, tau, 129);

    const Trajectory exact = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const Trajectory coarse = propagate_rk4(spec, protocol, grid, tau / 128.0, initial_state(spec));
    const Trajectory fine = propagate_rk4(spec, protocol, grid, tau / 256.0, initial_state(spec));

    const double err_coarse = max_state_deviation(exact, coarse);
    const double err_fine = max_state_deviation(exact, fine);
    REQUIRE(err_fine > 0.0);
    const double ratio = err_coarse / err_fine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("rk4 rejects bad steps and reports norm blow-ups") {
    const auto spec = SystemSpec::direct(g);
    const auto protocol =
        make_protocol_schedule(Scenario::Direct, g, TauChoice::explicit_value(5000.0));

    SUBCASE("step coarser than span/100") {
        const TimeGrid grid = TimeGrid::uniform(0.0, 100.0, 11);
        CHECK_THROWS_AS(propagate_rk4(spec, protocol, grid, 5.0, initial_state(spec)),
                        PreconditionError);
        CHECK_THROWS_AS(propagate_rk4(spec, protocol, grid, -1.0, initial_state(spec)),
                        PreconditionError);
    }

    SUBCASE("norm drift beyond 1e-6 is an accuracy error") {
        // g h = 2: far outside the stability region, so the norm explodes.
        const TimeGrid grid = TimeGrid::uniform(0.0, 4000.0, 101);
        CHECK_THROWS_AS(propagate_rk4(spec, protocol, grid, 40.0, initial_state(spec)),
                        AccuracyError);
    }
}

TEST_CASE("rk4 with callable profiles handles a smooth ramp") {
    // Linear ramp f(t) = t/T: phi(t) = g t^2 / (2T), exactly integrable.
    const auto spec = SystemSpec::direct(g);
    const double t_end = 40.0;
    const TimeGrid grid = TimeGrid::uniform(0.0, t_end, 101);
    auto ramp = [t_end](double t) { return t / t_end; };
    auto zero = [](double) { return 0.0; };

    const Trajectory trajectory =
        propagate_rk4(spec, ramp, zero, grid, 1e-2, initial_state(spec));
    for (int i = 0; i < grid.size(); ++i) {
        const double t = grid.times[i];
        const double phi = g * t * t / (2.0 * t_end);
        CHECK(std::abs(trajectory.states[i](0) - std::cos(phi)) <= 1e-8);
        CHECK(std::abs(trajectory.states[i](1) - (-1i * std::sin(phi))) <= 1e-8);
    }
}

TEST_CASE("energies from states") {
    const auto spec = SystemSpec::direct(g);
    const auto protocol = make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 401, protocol);
    const Trajectory trajectory = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const EnergyTrace trace = energies_from_states(spec, trajectory);

    SUBCASE("initial sample is zero by definition") {
        CHECK(trace.e_b[0] == 0.0);
        CHECK(trace.e_c[0] == 0.0);
    }

    SUBCASE("complete transfer at g t = pi/2") {
        const auto it = std::find(grid.times.begin(), grid.times.end(), protocol.tau);
        REQUIRE(it != grid.times.end());
        const int i = static_cast<int>(it - grid.times.begin());
        CHECK(std::abs(trace.e_b[i] - 1.0) <= 1e-12);
        CHECK(std::abs(trace.e_c[i] + 1.0) <= 1e-12);
    }

    SUBCASE("charger and battery mirror exactly") {
        for (int i = 0; i < trace.size(); ++i)
            CHECK(trace.e_b[i] + trace.e_c[i] == 0.0);
    }

    SUBCASE("mediator at half charge when phi = pi/2") {
        const auto med_spec = SystemSpec::mediated(Scenario::CoherentMediated, g);
        const auto med_protocol =
            make_protocol_schedule(Scenario::CoherentMediated, g, TauChoice::first_maximum());
        const double t_half = pi / (2.0 * sqrt2 * g);
        const TimeGrid med_grid = TimeGrid::for_protocol(0.0, t_half, 201, med_protocol);
        const Trajectory med =
            propagate_piecewise(med_spec, med_protocol, med_grid, initial_state(med_spec));
        const EnergyTrace med_trace = energies_from_states(med_spec, med);
        CHECK(std::abs(med_trace.e_m.back() - 0.5) <= 1e-12);
    }

    SUBCASE("dimension mismatch is rejected") {
        Trajectory wrong = trajectory;
        wrong.variant = ModelVariant::FullRWA;
        CHECK_THROWS_AS(
            energies_from_states(SystemSpec::direct(g, ModelVariant::FullRWA), wrong),
            PreconditionError);
    }
}

TEST_CASE("interaction energy vanishes along the resonant evolution") {
    const auto spec = SystemSpec::mediated(Scenario::CoherentMediated, g);
    const auto protocol =
        make_protocol_schedule(Scenario::CoherentMediated, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 1.5 * protocol.tau, 201, protocol);
    const Trajectory trajectory = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    for (int i = 0; i < grid.size(); ++i)
        CHECK(std::abs(interaction_energy(spec, protocol, trajectory.states[i],
                                          grid.times[i])) <= 1e-12);
}

TEST_CASE("trace comparison") {
    const auto spec = SystemSpec::direct(g);
    const auto protocol = make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 301, protocol);

    const EnergyTrace analytic = analytic_trace(spec, protocol, grid);
    const Trajectory trajectory = propagate_piecewise(spec, protocol, grid, initial_state(spec));
    const EnergyTrace numeric = energies_from_states(spec, trajectory);

    SUBCASE("a trace equals itself") {
        CHECK(compare_traces(analytic, analytic).max_delta() == 0.0);
    }

    SUBCASE("closed form vs exact propagation") {
        CHECK(compare_traces(analytic, numeric).max_delta() <= 1e-10);
    }

    SUBCASE("grid mismatch is an error") {
        EnergyTrace other = numeric;
        other.times[3] += 1e-6;
        CHECK_THROWS_AS(compare_traces(analytic, other), PreconditionError);
    }
}

TEST_CASE("first maximum location") {
    SUBCASE("direct trace peaks at g t = pi/2") {
        const auto spec = SystemSpec::direct(g);
        const auto protocol =
            make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
        const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 2001, protocol);
        const Trajectory trajectory =
            propagate_piecewise(spec, protocol, grid, initial_state(spec));
        const auto report = find_first_maximum(energies_from_states(spec, trajectory),
                                               Scenario::Direct);
        const double expected = pi / (2.0 * g);
        CHECK(std::abs(report.t_b_max - expected) <= 1e-3 * expected);
        CHECK(std::abs(report.e_b_max - 1.0) <= 1e-9);
        CHECK(report.interior_maximum);
    }

    SUBCASE("coherent trace peaks at g t = pi/sqrt(2)") {
        const auto spec = SystemSpec::mediated(Scenario::CoherentMediated, g);
        const auto protocol =
            make_protocol_schedule(Scenario::CoherentMediated, g, TauChoice::first_maximum());
        const TimeGrid grid = TimeGrid::for_protocol(0.0, 2.0 * protocol.tau, 2001, protocol);
        const Trajectory trajectory =
            propagate_piecewise(spec, protocol, grid, initial_state(spec));
        const auto report = find_first_maximum(energies_from_states(spec, trajectory),
                                               Scenario::CoherentMediated);
        const double expected = pi / (sqrt2 * g);
        CHECK(std::abs(report.t_b_max - expected) <= 1e-3 * expected);
    }

    SUBCASE("an all-zero trace is flagged") {
        EnergyTrace flat;
        flat.times = {0.0, 1.0, 2.0, 3.0};
        flat.e_b = {0.0, 0.0, 0.0, 0.0};
        flat.e_c = {0.0, 0.0, 0.0, 0.0};
        const auto report = find_first_maximum(flat, Scenario::Direct);
        CHECK(!report.interior_maximum);
        CHECK(report.e_b_max == 0.0);
    }

    SUBCASE("a monotone trace is flagged and reports the end value") {
        EnergyTrace rising;
        rising.times = {0.0, 1.0, 2.0, 3.0};
        rising.e_b = {0.0, 0.1, 0.3, 0.4};
        rising.e_c = {0.0, -0.1, -0.3, -0.4};
        const auto report = find_first_maximum(rising, Scenario::Direct);
        CHECK(!report.interior_maximum);
        CHECK(report.e_b_max == 0.4);
        CHECK(report.t_b_max == 3.0);
    }

    SUBCASE("an interior peak between samples is refined") {
        // y = 1 - (t - 1.05)^2 sampled on integers: vertex recovered.
        std::vector<double> times, values;
        for (int i = 0; i <= 4; ++i) {
            times.push_back(i);
            values.push_back(1.0 - (i - 1.05) * (i - 1.05));
        }
        const auto peak = first_maximum(times, values);
        CHECK(peak.interior);
        CHECK(std::abs(peak.t - 1.05) <= 1e-12);
        CHECK(std::abs(peak.value - 1.0) <= 1e-12);
    }
}

TEST_CASE("propagation rejects inconsistent inputs") {
    const auto spec = SystemSpec::direct(g);
    const auto protocol = make_protocol_schedule(Scenario::Direct, g, TauChoice::first_maximum());
    const TimeGrid grid = TimeGrid::for_protocol(0.0, 10.0, 11, protocol);

    SUBCASE("scenario mismatch") {
        const auto med_protocol =
            make_protocol_schedule(Scenario::CoherentMediated, g, TauChoice::first_maximum());
        CHECK_THROWS_AS(propagate_piecewise(spec, med_protocol, grid, initial_state(spec)),
                        ConfigError);
    }

    SUBCASE("wrong dimension") {
        Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(3);
        bad(0) = 1.0;
        CHECK_THROWS_AS(propagate_piecewise(spec, protocol, grid, bad), PreconditionError);
    }

    SUBCASE("unnormalized initial state") {
        Eigen::VectorXcd bad = Eigen::VectorXcd::Zero(2);
        bad(0) = 0.9;
        CHECK_THROWS_AS(propagate_piecewise(spec, protocol, grid, bad), PreconditionError);
    }
}
