#include "qbet/states.hpp"

namespace qbet {

std::vector<int> single_excitation_indices(int n_sites) {
    // Site 0 (the charger) is the most significant bit, so the C-excited
    // state comes first, matching the reduced basis order.
    std::vector<int> indices;
    indices.reserve(n_sites);
    for (int site = 0; site < n_sites; ++site)
        indices.push_back(1 << (n_sites - 1 - site));
    return indices;
}

Eigen::VectorXcd sector_amplitudes(const Eigen::VectorXcd& full, int n_sites) {
    const auto indices = single_excitation_indices(n_sites);
    Eigen::VectorXcd reduced(n_sites);
    for (int i = 0; i < n_sites; ++i)
        reduced(i) = full(indices[i]);
    return reduced;
}

double out_of_sector_population(const Eigen::VectorXcd& full, int n_sites) {
    const auto indices = single_excitation_indices(n_sites);
    double in_sector = 0.0;
    for (int idx : indices)
        in_sector += std::norm(full(idx));
    return full.squaredNorm() - in_sector;
}

Eigen::VectorXcd initial_state(const SystemSpec& spec) {
    const int n = spec.site_count();
    if (spec.model_variant == ModelVariant::Reduced) {
        Eigen::VectorXcd state = Eigen::VectorXcd::Zero(n);
        state(0) = 1.0; // charger excited
        return state;
    }
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(spec.full_dim());
    state(single_excitation_indices(n).front()) = 1.0;
    return state;
}

} // namespace qbet
