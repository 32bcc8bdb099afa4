// quadrature.hpp — Brute-force spectral-integral oracle for the per-spin
// decay rate.
//
// Starting from the damped half-Fourier integral
//   xi = 2 Re int_0^inf dtau e^{-eps tau} [ C(tau) e^{-i tau (Jc - w)}
//                                         + C(-tau) e^{+i tau (Jc + w)} ]
// with the thermal bath correlation
//   C(tau) = int_0^inf dOmega f(Omega) [ (n(Omega)+1) e^{-i Omega tau}
//                                      + n(Omega) e^{+i Omega tau} ],
// the tau integral of each Fourier component is the exact resolvent
// 1/(eps + i x), so the regularized rate becomes a frequency integral of
// Lorentzian-smeared spectral weights,
//   xi_eps = 2 int dOmega [ g+(Omega) (L(Omega-c1) + L(Omega-c2))
//                         + g-(Omega) (L(Omega-c3) + L(Omega-c4)) ],
// with g+ = f (n+1), g- = f n, L(x) = eps/(eps^2 + x^2) and centers
// c1 = w - Jc, c2 = -(Jc + w), c3 = Jc - w, c4 = Jc + w. That integral is
// evaluated numerically on dense composite Gauss-Legendre panels and the
// regularizer is removed by Richardson extrapolation eps -> 0. No regime
// logic enters anywhere: whichever Lorentzian centers land at positive
// frequency decide the result, which is what makes this an independent
// check of the closed-form branch structure.

#pragma once

#include "spinsense/bath.hpp"

namespace spinsense {

struct QuadratureOptions {
    double omega_max{0.0};    // 0 = auto: 20 * max(gaps, 1/(hbar beta), w)
    double epsilon0{0.0};     // 0 = auto: 0.01 * smallest smooth scale
    double omega_min{0.0};    // 0 = auto: 1e-6 * w (infrared cutoff)
    double refine{1.0};       // >1 shrinks every panel-width cap
    double tolerance{0.02};   // relative convergence demand on eps-halving
};

struct QuadratureResult {
    double xi{0.0};
    bool converged{false};
    double delta{0.0};      // change under halving the eps ladder
    double epsilon0{0.0};
    double omega_max{0.0};
};

QuadratureResult xi_quadrature_oracle(double collective, double omega, const BathContext& bath,
                                      const QuadratureOptions& opts = {});

}  // namespace spinsense
