#include "qbet/system.hpp"

namespace qbet {

const char* to_string(Scenario s) {
    switch (s) {
    case Scenario::Direct: return "direct";
    case Scenario::TwoStepMediated: return "two_step";
    case Scenario::CoherentMediated: return "coherent";
    }
    return "?";
}

const char* to_string(ModelVariant v) {
    switch (v) {
    case ModelVariant::Reduced: return "reduced";
    case ModelVariant::FullRWA: return "full_rwa";
    case ModelVariant::FullCounterRotating: return "full_cr";
    }
    return "?";
}

void SystemSpec::validate() const {
    if (!(g > 0.0))
        throw ConfigError("SystemSpec: coupling g must be positive");
    if (!(omega_c > 0.0) || !(omega_b > 0.0))
        throw ConfigError("SystemSpec: level spacings must be positive");
    if (omega_m && !(*omega_m > 0.0))
        throw ConfigError("SystemSpec: mediator level spacing must be positive");
    if (scenario == Scenario::Direct && omega_m)
        throw ConfigError("SystemSpec: direct scenario has no mediator");
    if (scenario != Scenario::Direct && !omega_m)
        throw ConfigError("SystemSpec: mediated scenario requires omega_m");
}

bool SystemSpec::resonant() const {
    if (omega_c != omega_b)
        return false;
    return !omega_m || *omega_m == omega_b;
}

SystemSpec SystemSpec::direct(double g, ModelVariant variant) {
    SystemSpec spec;
    spec.g = g;
    spec.model_variant = variant;
    spec.scenario = Scenario::Direct;
    spec.validate();
    return spec;
}

SystemSpec SystemSpec::mediated(Scenario scenario, double g, ModelVariant variant) {
    if (scenario == Scenario::Direct)
        throw ConfigError("SystemSpec::mediated: scenario is not mediated");
    SystemSpec spec;
    spec.omega_m = spec.omega_b;
    spec.g = g;
    spec.model_variant = variant;
    spec.scenario = scenario;
    spec.validate();
    return spec;
}

} // namespace qbet
