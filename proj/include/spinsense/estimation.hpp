// estimation.hpp — Measurement statistics for the GHZ frequency-estimation
// scheme: outcome probability, Fisher information, sensitivity and its
// optimum over the sensing time.

#pragma once

#include <optional>

#include "spinsense/bath.hpp"
#include "spinsense/geometry.hpp"
#include "spinsense/probe.hpp"
#include "spinsense/rates.hpp"

namespace spinsense {

// A single sensing configuration. The bias phase defaults to
// pi/2 - n w0 t, which centres the fringe so p = 1/2 at dw = 0.
//
// With cpmg = true the probe runs under a pi-pulse train locked to an
// oscillating signal; the static w0 phase is echoed away and the accumulated
// signal phase is reduced by the 2/pi quadrature average, so the closed form
// keeps the same shape with bias pi/2 and the sensitivity gains the factor
// (2/pi)^2. This effective description replaces any pulse-train integration.
struct SensingRun {
    ProbeSpec probe{};
    ClusterGeometry geom{};
    BathContext bath{};
    double time{0.0};
    std::optional<double> bias{};  // radians; empty = default bias point
    bool cpmg{false};

    SensingRun() = default;
    SensingRun(ProbeSpec p, ClusterGeometry g, BathContext b, double t = 0.0,
               std::optional<double> phi = {}, bool dd = false);
};

double default_bias(const SensingRun& run);

// p = 1/2 + (1/2) cos(w n t + phi) e^{-n Gamma t / 2}
double probability(const SensingRun& run);

// Closed form n^2 t^2 e^{-n Gamma t} at the default bias ((2/pi)^2 times that
// under cpmg). A custom bias that parks the fringe on p in {0, 1} is an
// uninformative measurement point and is rejected.
double fisher(const SensingRun& run);

// Debug path: Fisher information from the probability fringe by symmetric
// finite differences in w.
double fisher_finite_difference(const SensingRun& run, double step_fraction = 1e-6);

enum class SensitivityKind { Finite, Unbounded, DivergedRate };

struct OptimalSensitivity {
    SensitivityKind kind{SensitivityKind::Finite};
    double s_max{0.0};  // +inf when unbounded, 0 when the rate diverged
    double t_opt{0.0};  // 1/(n Gamma); +inf when unbounded
    Regime regime{Regime::WeakCoupling};
};

// Eq.-of-motion optimum: S_max = N/(e Gamma) at t_opt = 1/(n Gamma).
OptimalSensitivity optimize(const SensingRun& run);

struct HighBetaApprox {
    double s_max{0.0};
    bool valid{false};  // set when hbar beta (Jc - w) > 3
};

// Low-temperature approximation of the strong-ferromagnetic optimum,
// S_max ~ N / (e [g- e^{-hbar beta |Jc-w|} + g+ e^{-hbar beta |Jc+w|}]).
// Rejects other regimes.
HighBetaApprox high_beta_approx(const SensingRun& run);

struct SensitivityResult {
    double p{0.0};
    double fisher_information{0.0};
    double sensitivity{0.0};  // S = M F / t at the run's time
    OptimalSensitivity optimum{};
    Regime regime{Regime::WeakCoupling};
    bool mixed_regime{false};
    std::optional<double> high_beta{};  // filled in the strong-FM regime
};

// Full evaluation at the run's sensing time (requires time > 0).
SensitivityResult sensitivity(const SensingRun& run);

}  // namespace spinsense
