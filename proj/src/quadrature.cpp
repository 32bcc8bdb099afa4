#include "spinsense/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quad_panels.hpp"

namespace spinsense {

QuadratureResult xi_quadrature_oracle(double collective, double omega, const BathContext& bath,
                                      const QuadratureOptions& opts) {
    if (!(omega > 0.0)) throw std::domain_error("xi_quadrature_oracle: requires omega > 0");
    if (!(opts.refine > 0.0)) throw std::invalid_argument("xi_quadrature_oracle: refine must be > 0");

    const double gap_minus = std::abs(collective - omega);
    const double gap_plus = std::abs(collective + omega);
    const double hb = bath.hbar_beta();
    const double thermal_scale = std::isinf(hb) ? omega : 1.0 / hb;

    QuadratureResult res;
    if (bath.spectral.amplitude == 0.0) {
        res.converged = true;
        return res;
    }

    const double omega_min = opts.omega_min > 0.0 ? opts.omega_min : 1e-6 * omega;
    res.omega_max = opts.omega_max > 0.0
                        ? opts.omega_max
                        : 20.0 * std::max({gap_minus, gap_plus, thermal_scale, omega});

    const std::array<double, 4> centers = {omega - collective, -(collective + omega),
                                           collective - omega, collective + omega};
    double smin = std::min(omega, thermal_scale);
    for (double c : centers) {
        if (c > omega_min && c < res.omega_max) smin = std::min(smin, c);
    }
    res.epsilon0 = opts.epsilon0 > 0.0 ? opts.epsilon0 : 0.01 * smin;

    std::array<double, 5> eps_ladder;
    for (int i = 0; i < 5; ++i) eps_ladder[i] = res.epsilon0 / static_cast<double>(1 << i);

    const std::vector<double> center_list(centers.begin(), centers.end());
    const auto pts = detail::build_breakpoints(omega_min, res.omega_max, hb, center_list,
                                               eps_ladder.back(), opts.refine);
    const auto table = detail::tabulate(pts, bath);

    std::array<double, 5> values;
    for (int i = 0; i < 5; ++i) {
        const double eps = eps_ladder[i];
        const double e2 = eps * eps;
        values[i] = 2.0 * eps *
                    detail::integrate(table, [&](double x, double gp, double gm) {
                        const double d1 = x - centers[0];
                        const double d2 = x - centers[1];
                        const double d3 = x - centers[2];
                        const double d4 = x - centers[3];
                        return gp * (1.0 / (e2 + d1 * d1) + 1.0 / (e2 + d2 * d2)) +
                               gm * (1.0 / (e2 + d3 * d3) + 1.0 / (e2 + d4 * d4));
                    });
    }

    const double coarse =
        detail::extrapolate4({eps_ladder[0], eps_ladder[1], eps_ladder[2], eps_ladder[3]},
                             {values[0], values[1], values[2], values[3]});
    const double fine =
        detail::extrapolate4({eps_ladder[1], eps_ladder[2], eps_ladder[3], eps_ladder[4]},
                             {values[1], values[2], values[3], values[4]});

    res.xi = fine;
    res.delta = std::abs(fine - coarse);
    const double floor = 1e-13 * std::abs(values[0]);
    res.converged = res.delta <= std::max(opts.tolerance * std::abs(fine), floor);
    return res;
}

}  // namespace spinsense
