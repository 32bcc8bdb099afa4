// bath.hpp — Thermal environment: inverse temperature, spectral density and
// the Bose-Einstein occupation at a transition gap.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spinsense/spectral.hpp"
#include "spinsense/units.hpp"

namespace spinsense {

// beta = +inf is the zero-temperature sentinel.
struct BathContext {
    double beta{1.0};
    SpectralDensity spectral{};
    UnitSystem units{UnitSystem::natural()};

    BathContext() = default;
    BathContext(double b, SpectralDensity sd, UnitSystem u = UnitSystem::natural())
        : beta(b), spectral(sd), units(u) {
        if (std::isnan(b) || b <= 0.0) {
            throw std::invalid_argument("BathContext: beta must be > 0 (or +inf for zero temperature)");
        }
    }

    bool zero_temperature() const { return std::isinf(beta); }

    // hbar * beta in the active unit system; the product with a frequency is
    // the dimensionless exponent of the Boltzmann factors.
    double hbar_beta() const { return units.hbar * beta; }

    static BathContext natural(double beta, SpectralDensity sd) {
        return BathContext(beta, sd, UnitSystem::natural());
    }
    static BathContext zero_temperature_bath(SpectralDensity sd, UnitSystem u = UnitSystem::natural()) {
        return BathContext(std::numeric_limits<double>::infinity(), sd, u);
    }
    static BathContext si_from_temperature(double temperature_kelvin, SpectralDensity sd) {
        return BathContext(temperature_to_beta_si(temperature_kelvin), sd, UnitSystem::si());
    }
};

// Bose-Einstein occupation 1/(e^{hbar beta Omega} - 1) at gap Omega > 0.
inline double occupation(const BathContext& bath, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("occupation: requires Omega > 0");
    if (bath.zero_temperature()) return 0.0;
    const double x = bath.hbar_beta() * omega;
    if (x < 1.0) return 1.0 / std::expm1(x);
    const double e = std::exp(-x);  // underflows harmlessly to 0 for large x
    return e / (1.0 - e);
}

}  // namespace spinsense
