// rates.hpp — Coupling-regime classification and closed-form decay rates.
//
// A spin with collective coupling Jc in a cluster precessing at w > 0 relaxes
// through the two transition gaps |Jc - w| and |Jc + w|. Which Boltzmann
// factors enter depends on where Jc sits relative to w:
//   weak            -w < Jc < w :  xi = g-(n- + 1) + g+ n+
//   strong AF       Jc < -w     :  xi = g-(n- + 1) + g+(n+ + 1)
//   strong FM       Jc > w      :  xi = g- n- + g+ n+
// with g± = 2 pi f(|Jc ± w|) and n± the thermal occupations at those gaps.
// On the |Jc| = w boundary the vanishing gap is handled by its continuous
// limit, which stays finite only for Ohmic and harder spectra.

#pragma once

#include <string>
#include <vector>

#include "spinsense/bath.hpp"
#include "spinsense/geometry.hpp"

namespace spinsense {

enum class Regime { WeakCoupling, StrongAntiferromagnetic, StrongFerromagnetic, Boundary };

std::string regime_name(Regime r);

// Relative half-width of the boundary band around |Jc| = w.
inline constexpr double boundary_band = 1e-12;

Regime classify_regime(double collective, double omega);

// Continuous extension of 2 pi f(D) n(D) as the gap D -> 0+:
//   super-Ohmic (k > 1) -> 0, Ohmic (k = 1) -> 2 pi A / (hbar beta),
//   sub-Ohmic (k < 1) -> +inf. Zero temperature gives 0 for every k.
double boundary_rate_term(const SpectralDensity& spectral, const BathContext& bath);

struct SpinRate {
    double collective{0.0};
    double gamma_minus{0.0};  // 2 pi f(|Jc - w|)
    double gamma_plus{0.0};   // 2 pi f(|Jc + w|)
    double n_minus{0.0};
    double n_plus{0.0};
    double xi{0.0};           // +inf marks a diverged boundary rate
    Regime regime{Regime::WeakCoupling};

    bool diverged() const { return std::isinf(xi); }
};

// Decay rate of one spin with collective coupling Jc.
SpinRate xi_rate(double collective, double omega, const BathContext& bath);

struct RateBundle {
    std::vector<SpinRate> spins;
    double average{0.0};        // Gamma = (1/n) sum xi_i; +inf if any spin diverged
    Regime regime{Regime::WeakCoupling};  // shared regime when uniform
    bool uniform_coupling{false};
    bool mixed_regime{false};

    bool diverged() const { return std::isinf(average); }
};

// Per-spin rates for a whole cluster plus their average.
RateBundle average_rate(const ClusterGeometry& geom, double omega, const BathContext& bath);

}  // namespace spinsense
