#include "spinsense/scenario.hpp"

#include <numbers>
#include <stdexcept>

namespace spinsense {

FluxVariant parse_flux_variant(const std::string& name) {
    if (name == "weak2") return FluxVariant::Weak2;
    if (name == "strongFM2") return FluxVariant::StrongFm2;
    if (name == "noninteracting4") return FluxVariant::NonInteracting4;
    if (name == "strongFM4") return FluxVariant::StrongFm4;
    throw std::invalid_argument("unknown flux scenario variant: " + name);
}

std::string flux_variant_name(FluxVariant v) {
    switch (v) {
        case FluxVariant::Weak2: return "weak2";
        case FluxVariant::StrongFm2: return "strongFM2";
        case FluxVariant::NonInteracting4: return "noninteracting4";
        case FluxVariant::StrongFm4: return "strongFM4";
    }
    return "unknown";
}

FluxParameters flux_parameters(FluxVariant v) {
    FluxParameters p;
    switch (v) {
        case FluxVariant::Weak2:
            p = {2, 5e9, 0.0, 30e-6, 0.02};
            break;
        case FluxVariant::StrongFm2:
            p = {2, 2e9, 5e9, 20e-6, 0.02};
            break;
        case FluxVariant::NonInteracting4:
            p = {4, 5e9, 0.0, 30e-6, 0.02};
            break;
        case FluxVariant::StrongFm4:
            p = {4, 2e9, 5e9, 2e-6, 0.02};
            break;
    }
    return p;
}

FluxScenarioResult run_flux_scenario(FluxVariant v) {
    const FluxParameters p = flux_parameters(v);

    // gamma+ = gamma- = 1/T1 at every gap: a white spectral density with
    // 2 pi f = 1/T1.
    const SpectralDensity white = SpectralDensity::white_noise(
        1.0 / (2.0 * std::numbers::pi * p.t1_seconds));
    const BathContext bath = BathContext::si_from_temperature(p.temperature, white);
    const ClusterGeometry geom(p.n_qubits, 0.0, p.coupling);
    const ProbeSpec probe(p.n_qubits, 1, p.omega0);
    const SensingRun run(probe, geom, bath, 0.0, {}, /*cpmg=*/true);

    FluxScenarioResult out;
    out.variant = v;
    out.params = p;
    out.rates = average_rate(geom, probe.omega(), bath);
    out.optimum = optimize(run);
    return out;
}

}  // namespace spinsense
