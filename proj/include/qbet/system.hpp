// system.hpp — System description: level spacings, coupling, model variant, scenario

#pragma once

#include <optional>
#include <string>

#include "qbet/errors.hpp"

namespace qbet {

// Energy transfer configuration: charger -> battery, either directly or
// through a mediator qubit.
enum class Scenario {
    Direct,           // C coupled to B
    TwoStepMediated,  // C->M, then later M->B (delayed second leg)
    CoherentMediated, // C->M and M->B switched together
};

// Which state space the dynamics runs in.
enum class ModelVariant {
    Reduced,             // single-excitation basis (dim 2 or 3)
    FullRWA,             // full tensor-product space, exchange couplings only
    FullCounterRotating, // full space including the pair-creation/annihilation terms
};

const char* to_string(Scenario s);
const char* to_string(ModelVariant v);

// Immutable description of the qubit system. Energies are in units of
// omega_b, times in 1/omega_b (hbar = 1).
struct SystemSpec {
    double omega_c = 1.0;          // charger level spacing
    std::optional<double> omega_m; // mediator level spacing; absent for Direct
    double omega_b = 1.0;          // battery level spacing, the unit of energy
    double g = 0.05;               // coupling strength
    ModelVariant model_variant = ModelVariant::Reduced;
    Scenario scenario = Scenario::Direct;

    // Throws ConfigError on invalid field combinations.
    void validate() const;

    // True iff all present level spacings are equal. Closed-form operations
    // require it; the propagators do not.
    bool resonant() const;

    // True when the coupling is strong enough that dropping the
    // counter-rotating terms stops being a good approximation.
    bool rwa_warning() const { return g > 0.1 * omega_b; }

    bool mediated() const { return scenario != Scenario::Direct; }
    int site_count() const { return mediated() ? 3 : 2; }
    int reduced_dim() const { return site_count(); }
    int full_dim() const { return 1 << site_count(); }

    // Resonant spec with all spacings equal to omega_b.
    static SystemSpec direct(double g, ModelVariant variant = ModelVariant::Reduced);
    static SystemSpec mediated(Scenario scenario, double g,
                               ModelVariant variant = ModelVariant::Reduced);
};

} // namespace qbet
