#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qbet/hamiltonian.hpp"
#include "qbet/states.hpp"

using namespace qbet;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

SystemSpec detuned_direct(double omega_c, double g) {
    SystemSpec spec = SystemSpec::direct(g);
    spec.omega_c = omega_c;
    return spec;
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(SystemSpec::direct(0.0), ConfigError);
    CHECK_THROWS_AS(SystemSpec::direct(-0.05), ConfigError);

    SystemSpec direct_with_mediator = SystemSpec::direct(0.05);
    direct_with_mediator.omega_m = 1.0;
    CHECK_THROWS_AS(direct_with_mediator.validate(), ConfigError);

    SystemSpec mediated_without = SystemSpec::mediated(Scenario::CoherentMediated, 0.05);
    mediated_without.omega_m.reset();
    CHECK_THROWS_AS(mediated_without.validate(), ConfigError);

    CHECK(SystemSpec::direct(0.15).rwa_warning());
    CHECK(!SystemSpec::direct(0.05).rwa_warning());

    CHECK(SystemSpec::direct(0.05).resonant());
    CHECK(!detuned_direct(1.2, 0.05).resonant());
}

TEST_CASE("reduced direct Hamiltonian") {
    SUBCASE("resonant with the coupling on") {
        const auto h = build_reduced_direct(SystemSpec::direct(0.05), 1.0);
        CHECK(h.entries(0, 0) == 0.0);
        CHECK(h.entries(1, 1) == 0.0);
        CHECK(h.entries(0, 1) == std::complex<double>(0.05, 0.0));
        CHECK(h.entries(1, 0) == std::complex<double>(0.05, 0.0));
    }

    SUBCASE("coupling off gives the zero matrix") {
        const auto h = build_reduced_direct(SystemSpec::direct(0.05), 0.0);
        CHECK(max_abs(h.entries) == 0.0);
    }

    SUBCASE("detuned diagonal is +/- (omega_c - omega_b)/2") {
        const auto h = build_reduced_direct(detuned_direct(1.2, 0.05), 1.0);
        CHECK(h.entries(0, 0).real() == doctest::Approx(0.1).epsilon(1e-15));
        CHECK(h.entries(1, 1).real() == doctest::Approx(-0.1).epsilon(1e-15));
        CHECK(h.entries(0, 1).real() == doctest::Approx(0.05).epsilon(1e-15));
    }

    SUBCASE("mediated spec is rejected") {
        CHECK_THROWS_AS(
            build_reduced_direct(SystemSpec::mediated(Scenario::CoherentMediated, 0.05), 1.0),
            ConfigError);
    }
}

TEST_CASE("reduced mediated Hamiltonian") {
    const auto spec = SystemSpec::mediated(Scenario::TwoStepMediated, 0.05);

    SUBCASE("resonant tridiagonal with zero diagonal") {
        const auto h = build_reduced_mediated(spec, 1.0, 1.0);
        for (int i = 0; i < 3; ++i)
            CHECK(h.entries(i, i) == 0.0);
        CHECK(h.entries(0, 1).real() == 0.05);
        CHECK(h.entries(1, 2).real() == 0.05);
        CHECK(h.entries(0, 2) == std::complex<double>(0.0, 0.0));
    }

    SUBCASE("only the first leg active") {
        const auto h = build_reduced_mediated(spec, 1.0, 0.0);
        CHECK(h.entries(0, 1).real() == 0.05);
        CHECK(h.entries(1, 2) == std::complex<double>(0.0, 0.0));
    }

    SUBCASE("both legs off gives the zero matrix") {
        CHECK(max_abs(build_reduced_mediated(spec, 0.0, 0.0).entries) == 0.0);
    }

    SUBCASE("direct spec is rejected") {
        CHECK_THROWS_AS(build_reduced_mediated(SystemSpec::direct(0.05), 1.0, 1.0), ConfigError);
    }
}

TEST_CASE("full Hamiltonian matches an explicit tensor-product construction") {
    // Hand-built 4x4 in the basis |c b> (index 2c + b), locals ordered
    // (|0>, |1>), exchange coupling connecting |01> and |10>.
    const double omega_c = 1.2, omega_b = 1.0, g = 0.05, f = 0.7;
    SystemSpec spec = detuned_direct(omega_c, g);
    spec.model_variant = ModelVariant::FullRWA;

    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(0, 0) = -0.5 * (omega_c + omega_b);
    expected(1, 1) = 0.5 * (-omega_c + omega_b);
    expected(2, 2) = 0.5 * (omega_c - omega_b);
    expected(3, 3) = 0.5 * (omega_c + omega_b);
    expected(1, 2) = expected(2, 1) = g * f;

    const auto h = build_full(spec, f);
    CHECK(max_abs(h.entries - expected) <= 1e-14);
}

TEST_CASE("free full Hamiltonian has the spectrum {-1, 0, 0, +1}") {
    SystemSpec spec = SystemSpec::direct(0.05, ModelVariant::FullRWA);
    const auto h = build_full(spec, 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.entries);
    const Eigen::VectorXd expected((Eigen::VectorXd(4) << -1.0, 0.0, 0.0, 1.0).finished());
    CHECK((solver.eigenvalues() - expected).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("reduced blocks sit inside the full Hamiltonian up to a constant shift") {
    auto check_block = [](const SystemSpec& reduced_spec, const Eigen::MatrixXcd& reduced,
                          const Eigen::MatrixXcd& full) {
        const auto indices = single_excitation_indices(reduced_spec.site_count());
        const int dim = static_cast<int>(indices.size());
        Eigen::MatrixXcd block(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                block(i, j) = full(indices[i], indices[j]);
        const Eigen::MatrixXcd diff = block - reduced;
        // diff must be a multiple of the identity
        const std::complex<double> shift = diff(0, 0);
        CHECK(max_abs(diff - shift * Eigen::MatrixXcd::Identity(dim, dim)) <= 1e-14);
    };

    SUBCASE("direct, resonant and detuned") {
        for (double omega_c : {1.0, 1.2}) {
            SystemSpec spec = detuned_direct(omega_c, 0.05);
            const auto reduced = build_reduced_direct(spec, 0.8);
            spec.model_variant = ModelVariant::FullRWA;
            check_block(spec, reduced.entries, build_full(spec, 0.8).entries);
        }
    }

    SUBCASE("mediated, resonant and detuned") {
        for (double omega_m : {1.0, 0.9}) {
            SystemSpec spec = SystemSpec::mediated(Scenario::CoherentMediated, 0.05);
            spec.omega_m = omega_m;
            const auto reduced = build_reduced_mediated(spec, 1.0, 0.4);
            spec.model_variant = ModelVariant::FullRWA;
            check_block(spec, reduced.entries, build_full(spec, 1.0, 0.4).entries);
        }
    }
}

TEST_CASE("pair terms annihilate the charger-excited direct state") {
    SystemSpec spec = SystemSpec::direct(0.05, ModelVariant::FullCounterRotating);
    const auto h = build_full(spec, 1.0);
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(4);
    state(2) = 1.0; // |1_C 0_B>
    const Eigen::VectorXcd image = h.entries * state;
    CHECK(std::abs(image(0)) == 0.0); // |0_C 0_B>
    CHECK(std::abs(image(3)) == 0.0); // |1_C 1_B>
}

TEST_CASE("every construction is Hermitian") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int round = 0; round < 50; ++round) {
        const double g = 0.001 + 0.099 * unit(rng);
        const double f1 = 2.0 * unit(rng) - 0.5;
        const double f2 = 2.0 * unit(rng) - 0.5;
        const bool mediated = unit(rng) < 0.5;

        SystemSpec spec = mediated ? SystemSpec::mediated(Scenario::CoherentMediated, g)
                                   : SystemSpec::direct(g);
        spec.omega_c = 0.8 + 0.4 * unit(rng);
        if (mediated)
            spec.omega_m = 0.8 + 0.4 * unit(rng);

        const auto reduced = mediated ? build_reduced_mediated(spec, f1, f2)
                                      : build_reduced_direct(spec, f1);
        CHECK(max_abs(reduced.entries - reduced.entries.adjoint()) <= 1e-14);

        for (auto variant : {ModelVariant::FullRWA, ModelVariant::FullCounterRotating}) {
            spec.model_variant = variant;
            const auto full = build_full(spec, f1, f2);
            CHECK(max_abs(full.entries - full.entries.adjoint()) <= 1e-14);
        }
    }
}

TEST_CASE("excitation number commutes with the RWA Hamiltonian only") {
    for (bool mediated : {false, true}) {
        SystemSpec spec = mediated ? SystemSpec::mediated(Scenario::CoherentMediated, 0.05,
                                                          ModelVariant::FullRWA)
                                   : SystemSpec::direct(0.05, ModelVariant::FullRWA);
        const auto n_op = excitation_number_operator(spec.site_count());

        const auto rwa = build_full(spec, 1.0, 1.0);
        CHECK(max_abs(rwa.entries * n_op - n_op * rwa.entries) <= 1e-14);

        spec.model_variant = ModelVariant::FullCounterRotating;
        const auto cr = build_full(spec, 1.0, 1.0);
        CHECK(max_abs(cr.entries * n_op - n_op * cr.entries) > 0.01);
    }
}

TEST_CASE("build_full rejects the reduced variant") {
    CHECK_THROWS_AS(build_full(SystemSpec::direct(0.05), 1.0), ConfigError);
}
