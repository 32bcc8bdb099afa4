// units.hpp — Unit systems (natural vs SI) and physical constants.
//
// Natural mode: hbar = k_B = 1, every frequency is measured in units of the
// reference frequency w0, times in 1/w0, inverse temperatures in 1/(hbar*w0).
// SI mode: angular frequencies in rad/s, temperatures in kelvin, times in
// seconds, inverse temperatures in 1/J.

#pragma once

#include <stdexcept>

namespace spinsense {

namespace constants {
// CODATA 2018 exact values
inline constexpr double hbar_si = 1.054571817e-34;  // J s
inline constexpr double k_boltzmann_si = 1.380649e-23;  // J / K
}  // namespace constants

enum class UnitMode { Natural, SI };

struct UnitSystem {
    UnitMode mode{UnitMode::Natural};
    double hbar{1.0};
    double k_boltzmann{1.0};

    static UnitSystem natural() { return UnitSystem{UnitMode::Natural, 1.0, 1.0}; }
    static UnitSystem si() {
        return UnitSystem{UnitMode::SI, constants::hbar_si, constants::k_boltzmann_si};
    }

    bool is_natural() const { return mode == UnitMode::Natural; }
};

// Conversions between the two systems. All natural-mode quantities are
// referenced to the SI value of w0 (rad/s).

inline double frequency_to_si(double freq_natural, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("frequency_to_si: omega0_si must be > 0");
    return freq_natural * omega0_si;
}

inline double frequency_to_natural(double freq_si, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("frequency_to_natural: omega0_si must be > 0");
    return freq_si / omega0_si;
}

inline double time_to_si(double time_natural, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("time_to_si: omega0_si must be > 0");
    return time_natural / omega0_si;
}

inline double time_to_natural(double time_si, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("time_to_natural: omega0_si must be > 0");
    return time_si * omega0_si;
}

// Natural beta is in units of 1/(hbar*w0); SI beta is 1/(k_B T) in 1/J.
// The dimensionless combination hbar*beta*Omega is invariant.
inline double beta_to_si(double beta_natural, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("beta_to_si: omega0_si must be > 0");
    return beta_natural / (constants::hbar_si * omega0_si);
}

inline double beta_to_natural(double beta_si, double omega0_si) {
    if (omega0_si <= 0.0) throw std::invalid_argument("beta_to_natural: omega0_si must be > 0");
    return beta_si * constants::hbar_si * omega0_si;
}

inline double temperature_to_beta_si(double temperature_kelvin) {
    if (temperature_kelvin <= 0.0) {
        throw std::invalid_argument("temperature_to_beta_si: temperature must be > 0");
    }
    return 1.0 / (constants::k_boltzmann_si * temperature_kelvin);
}

}  // namespace spinsense
