// scenario.hpp — Worked superconducting flux-qubit estimates in SI units.
//
// Each variant bakes in the experimental numbers: qubit frequency, Ising
// coupling, T1 at the relevant transition gaps, a 20 mK environment, and the
// (2/pi)^2 dynamical-decoupling factor. Quoted "GHz" values are angular
// frequencies, value * 1e9 rad/s. The equal gamma+ = gamma- = 1/T1 rates are
// represented as a white spectral density with amplitude 1/(2 pi T1).

#pragma once

#include <string>

#include "spinsense/estimation.hpp"

namespace spinsense {

enum class FluxVariant { Weak2, StrongFm2, NonInteracting4, StrongFm4 };

FluxVariant parse_flux_variant(const std::string& name);  // weak2, strongFM2, ...
std::string flux_variant_name(FluxVariant v);

struct FluxParameters {
    std::size_t n_qubits{2};
    double omega0{0.0};       // rad/s
    double coupling{0.0};     // pairwise J, rad/s (all-to-all)
    double t1_seconds{0.0};   // relaxation time defining gamma = 1/T1
    double temperature{0.02}; // kelvin
};

struct FluxScenarioResult {
    FluxVariant variant{FluxVariant::Weak2};
    FluxParameters params;
    RateBundle rates;
    OptimalSensitivity optimum;  // s_max in Hz^-1 (seconds), t_opt in seconds
};

FluxParameters flux_parameters(FluxVariant v);
FluxScenarioResult run_flux_scenario(FluxVariant v);

}  // namespace spinsense
