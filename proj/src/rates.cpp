#include "spinsense/rates.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spinsense {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::WeakCoupling: return "weak";
        case Regime::StrongAntiferromagnetic: return "strong_af";
        case Regime::StrongFerromagnetic: return "strong_fm";
        case Regime::Boundary: return "boundary";
    }
    return "unknown";
}

Regime classify_regime(double collective, double omega) {
    if (!(omega > 0.0)) throw std::domain_error("classify_regime: requires omega > 0");
    if (std::abs(std::abs(collective) - omega) <= boundary_band * omega) return Regime::Boundary;
    if (collective > omega) return Regime::StrongFerromagnetic;
    if (collective < -omega) return Regime::StrongAntiferromagnetic;
    return Regime::WeakCoupling;
}

double boundary_rate_term(const SpectralDensity& spectral, const BathContext& bath) {
    if (spectral.amplitude == 0.0) return 0.0;
    if (bath.zero_temperature()) return 0.0;
    if (spectral.super_ohmic()) return 0.0;
    if (spectral.ohmic()) return two_pi * spectral.amplitude / bath.hbar_beta();
    return inf;
}

SpinRate xi_rate(double collective, double omega, const BathContext& bath) {
    if (!(omega > 0.0)) throw std::domain_error("xi_rate: requires omega > 0");

    SpinRate r;
    r.collective = collective;
    r.regime = classify_regime(collective, omega);

    if (r.regime == Regime::Boundary) {
        // One gap closes; the other sits at |Jc| + w (= 2w up to the band).
        const double open_gap = std::abs(collective) + omega;
        const double gamma_open = two_pi * bath.spectral(open_gap);
        const double n_open = occupation(bath, open_gap);
        const double closing = boundary_rate_term(bath.spectral, bath);
        // Limits of the closed-gap factors, recorded for reporting.
        const double gamma_closed = bath.spectral.amplitude == 0.0 ? 0.0
                                  : bath.spectral.exponent > 0.0   ? 0.0
                                  : bath.spectral.exponent == 0.0  ? two_pi * bath.spectral.amplitude
                                                                   : inf;
        const double n_closed = bath.zero_temperature() ? 0.0 : inf;
        if (collective > 0.0) {
            // weak/FM edge: gap- closes, the open gap+ term carries n only
            r.gamma_minus = gamma_closed;
            r.n_minus = n_closed;
            r.gamma_plus = gamma_open;
            r.n_plus = n_open;
            r.xi = std::isinf(closing) ? inf : closing + gamma_open * n_open;
        } else {
            // weak/AF edge: gap+ closes, the open gap- term carries n + 1
            r.gamma_minus = gamma_open;
            r.n_minus = n_open;
            r.gamma_plus = gamma_closed;
            r.n_plus = n_closed;
            r.xi = std::isinf(closing) ? inf : closing + gamma_open * (n_open + 1.0);
        }
        return r;
    }

    const double gap_minus = std::abs(collective - omega);
    const double gap_plus = std::abs(collective + omega);
    r.gamma_minus = two_pi * bath.spectral(gap_minus);
    r.gamma_plus = two_pi * bath.spectral(gap_plus);
    r.n_minus = occupation(bath, gap_minus);
    r.n_plus = occupation(bath, gap_plus);

    switch (r.regime) {
        case Regime::WeakCoupling:
            r.xi = r.gamma_minus * (r.n_minus + 1.0) + r.gamma_plus * r.n_plus;
            break;
        case Regime::StrongAntiferromagnetic:
            r.xi = r.gamma_minus * (r.n_minus + 1.0) + r.gamma_plus * (r.n_plus + 1.0);
            break;
        case Regime::StrongFerromagnetic:
            r.xi = r.gamma_minus * r.n_minus + r.gamma_plus * r.n_plus;
            break;
        case Regime::Boundary:
            break;  // handled above
    }
    return r;
}

RateBundle average_rate(const ClusterGeometry& geom, double omega, const BathContext& bath) {
    RateBundle bundle;
    const auto couplings = collective_couplings(geom);
    bundle.spins.reserve(couplings.size());

    double sum = 0.0;
    bool any_diverged = false;
    for (double jc : couplings) {
        bundle.spins.push_back(xi_rate(jc, omega, bath));
        const auto& s = bundle.spins.back();
        if (s.diverged()) any_diverged = true;
        sum += s.xi;
    }

    bundle.average = any_diverged ? inf : sum / static_cast<double>(bundle.spins.size());
    bundle.regime = bundle.spins.front().regime;
    bundle.uniform_coupling = true;
    for (const auto& s : bundle.spins) {
        if (s.collective != bundle.spins.front().collective) bundle.uniform_coupling = false;
        if (s.regime != bundle.regime) bundle.mixed_regime = true;
    }
    return bundle;
}

}  // namespace spinsense
