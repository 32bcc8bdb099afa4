// quad_panels.hpp — Internal composite Gauss-Legendre machinery shared by the
// spectral-integral oracles. Panels follow a geometric ladder from the
// infrared cutoff (resolving power-law spectra), are capped near the thermal
// scale, and are refined dyadically around requested centers.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "spinsense/bath.hpp"

namespace spinsense::detail {

// 16-point Gauss-Legendre rule on [-1, 1].
inline constexpr std::array<double, 8> gl_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> gl_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

inline double bose(double hbar_beta, double omega) {
    if (std::isinf(hbar_beta)) return 0.0;
    const double x = hbar_beta * omega;
    if (x < 1.0) return 1.0 / std::expm1(x);
    const double e = std::exp(-x);
    return e / (1.0 - e);
}

struct NodeTable {
    std::vector<double> x;        // abscissa
    std::vector<double> weight;   // GL weight * panel half-width
    std::vector<double> g_plus;   // f(x) (n(x) + 1)
    std::vector<double> g_minus;  // f(x) n(x)
};

inline std::vector<double> build_breakpoints(double omega_min, double omega_max, double hbar_beta,
                                             const std::vector<double>& centers, double scale_min,
                                             double refine) {
    std::vector<double> pts;
    pts.push_back(omega_min);
    pts.push_back(omega_max);

    const double geom_factor = 0.35 / refine;
    const double thermal = std::isinf(hbar_beta) ? omega_max : 3.0 / (hbar_beta * refine);
    double a = omega_min;
    while (a < omega_max) {
        const double w = std::min(geom_factor * a, thermal + 0.10 * a / refine);
        a += std::max(w, omega_min);
        if (a < omega_max) pts.push_back(a);
    }

    for (double c : centers) {
        if (c <= omega_min || c >= omega_max) continue;
        pts.push_back(c);
        const double span = std::max(c - omega_min, omega_max - c);
        for (double d = scale_min; d < span; d *= 2.0) {
            if (c - d > omega_min) pts.push_back(c - d);
            if (c + d < omega_max) pts.push_back(c + d);
        }
    }

    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    out.reserve(pts.size());
    for (double p : pts) {
        if (out.empty() || p - out.back() > 1e-14 * (std::abs(p) + omega_min)) out.push_back(p);
    }
    return out;
}

inline NodeTable tabulate(const std::vector<double>& pts, const BathContext& bath) {
    NodeTable t;
    const std::size_t n_nodes = (pts.size() - 1) * 16;
    t.x.reserve(n_nodes);
    t.weight.reserve(n_nodes);
    t.g_plus.reserve(n_nodes);
    t.g_minus.reserve(n_nodes);
    const double hb = bath.hbar_beta();
    for (std::size_t p = 0; p + 1 < pts.size(); ++p) {
        const double mid = 0.5 * (pts[p] + pts[p + 1]);
        const double half = 0.5 * (pts[p + 1] - pts[p]);
        for (std::size_t k = 0; k < 8; ++k) {
            for (double sign : {-1.0, 1.0}) {
                const double x = mid + sign * half * gl_x[k];
                const double f = bath.spectral(x);
                const double n = bose(hb, x);
                t.x.push_back(x);
                t.weight.push_back(half * gl_w[k]);
                t.g_plus.push_back(f * (n + 1.0));
                t.g_minus.push_back(f * n);
            }
        }
    }
    return t;
}

// Sum of weight * kernel(x, g+, g-) over all nodes.
template <class Kernel>
double integrate(const NodeTable& t, Kernel&& kernel) {
    double sum = 0.0;
    for (std::size_t i = 0; i < t.x.size(); ++i) {
        sum += t.weight[i] * kernel(t.x[i], t.g_plus[i], t.g_minus[i]);
    }
    return sum;
}

// Polynomial extrapolation to eps = 0 through four ladder values
// (Lagrange basis evaluated at zero).
inline double extrapolate4(const std::array<double, 4>& eps, const std::array<double, 4>& val) {
    double out = 0.0;
    for (int i = 0; i < 4; ++i) {
        double coeff = 1.0;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            coeff *= -eps[j] / (eps[i] - eps[j]);
        }
        out += coeff * val[i];
    }
    return out;
}

}  // namespace spinsense::detail
