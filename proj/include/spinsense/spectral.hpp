// spectral.hpp — Power-law bath spectral densities f(Omega) = A * Omega^k.

#pragma once

#include <cmath>
#include <stdexcept>

namespace spinsense {

// Covers the Ohmic (k=1), white-noise (k=0) and 1/f (k=-1) cases used
// throughout, plus arbitrary power laws. f has units of frequency; A carries
// frequency^(1-k). A = 0 is the decoupled (dissipation-free) edge case.
struct SpectralDensity {
    double amplitude{1e-3};
    double exponent{1.0};

    SpectralDensity() = default;
    SpectralDensity(double a, double k) : amplitude(a), exponent(k) {
        if (!(a >= 0.0)) throw std::invalid_argument("SpectralDensity: amplitude must be >= 0");
        if (!std::isfinite(k)) throw std::invalid_argument("SpectralDensity: exponent must be finite");
    }

    // Valid only for Omega > 0; the Omega -> 0 limit is owned by
    // boundary_rate_term in rates.hpp.
    double operator()(double omega) const {
        if (!(omega > 0.0)) throw std::domain_error("SpectralDensity: requires Omega > 0");
        if (amplitude == 0.0) return 0.0;
        return amplitude * std::pow(omega, exponent);
    }

    bool sub_ohmic() const { return exponent < 1.0; }
    bool ohmic() const { return exponent == 1.0; }
    bool super_ohmic() const { return exponent > 1.0; }

    static SpectralDensity ohmic_density(double a) { return {a, 1.0}; }
    static SpectralDensity white_noise(double a) { return {a, 0.0}; }
    static SpectralDensity one_over_f(double a) { return {a, -1.0}; }
};

}  // namespace spinsense
