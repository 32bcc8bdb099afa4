#include "spinsense/estimation.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace spinsense {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double cpmg_amplitude = 2.0 / std::numbers::pi;

double euler_e() { return std::numbers::e; }

struct FringeParams {
    double n;       // cluster size
    double gamma;   // average decay rate
    Regime regime;
    bool mixed;
};

FringeParams fringe_params(const SensingRun& run, double omega) {
    const auto bundle = average_rate(run.geom, omega, run.bath);
    return {static_cast<double>(run.geom.size), bundle.average, bundle.regime, bundle.mixed_regime};
}

double probability_at(const SensingRun& run, double delta_omega) {
    const double n = static_cast<double>(run.geom.size);
    const double omega = run.probe.omega0 + delta_omega;
    if (!(omega > 0.0)) throw std::domain_error("probability: omega must stay > 0");
    const auto fp = fringe_params(run, omega);
    const double damping = std::isinf(fp.gamma) ? 0.0 : std::exp(-n * fp.gamma * run.time / 2.0);
    const double phi = run.bias ? *run.bias : default_bias(run);
    const double phase = run.cpmg ? n * cpmg_amplitude * delta_omega * run.time + phi
                                  : n * omega * run.time + phi;
    return 0.5 + 0.5 * std::cos(phase) * damping;
}

}  // namespace

SensingRun::SensingRun(ProbeSpec p, ClusterGeometry g, BathContext b, double t,
                       std::optional<double> phi, bool dd)
    : probe(p), geom(g), bath(b), time(t), bias(phi), cpmg(dd) {
    if (p.cluster_size() != g.size) {
        throw std::invalid_argument("SensingRun: probe cluster size must match the geometry");
    }
    if (t < 0.0) throw std::invalid_argument("SensingRun: time must be >= 0");
}

double default_bias(const SensingRun& run) {
    if (run.cpmg) return std::numbers::pi / 2.0;
    const double n = static_cast<double>(run.geom.size);
    return std::numbers::pi / 2.0 - n * run.probe.omega0 * run.time;
}

double probability(const SensingRun& run) {
    return probability_at(run, run.probe.delta_omega);
}

double fisher(const SensingRun& run) {
    const double n = static_cast<double>(run.geom.size);
    SensingRun at_center = run;
    at_center.probe.delta_omega = 0.0;

    if (run.bias) {
        const double p = probability(at_center);
        if (p * (1.0 - p) < 1e-12) {
            throw std::domain_error("fisher: bias parks the fringe on p in {0,1}; uninformative measurement point");
        }
        return fisher_finite_difference(at_center);
    }

    const auto fp = fringe_params(at_center, run.probe.omega0);
    if (std::isinf(fp.gamma)) return 0.0;
    const double base = n * n * run.time * run.time * std::exp(-n * fp.gamma * run.time);
    return run.cpmg ? cpmg_amplitude * cpmg_amplitude * base : base;
}

double fisher_finite_difference(const SensingRun& run, double step_fraction) {
    const double h = step_fraction * run.probe.omega0;
    SensingRun center = run;
    center.probe.delta_omega = 0.0;
    const double p0 = probability(center);
    if (p0 * (1.0 - p0) < 1e-12) {
        throw std::domain_error("fisher_finite_difference: uninformative measurement point");
    }
    const double pp = probability_at(center, h);
    const double pm = probability_at(center, -h);
    const double dp = (pp - pm) / (2.0 * h);
    return dp * dp / (p0 * (1.0 - p0));
}

OptimalSensitivity optimize(const SensingRun& run) {
    const double n = static_cast<double>(run.geom.size);
    const double total = static_cast<double>(run.probe.total_spins);
    const double omega = run.probe.omega();
    const auto fp = fringe_params(run, omega);
    const double dd = run.cpmg ? cpmg_amplitude * cpmg_amplitude : 1.0;

    OptimalSensitivity opt;
    opt.regime = fp.regime;
    if (std::isinf(fp.gamma)) {
        opt.kind = SensitivityKind::DivergedRate;
        opt.s_max = 0.0;
        opt.t_opt = 0.0;
        return opt;
    }
    if (fp.gamma == 0.0) {
        opt.kind = SensitivityKind::Unbounded;
        opt.s_max = inf;
        opt.t_opt = inf;
        return opt;
    }
    opt.kind = SensitivityKind::Finite;
    opt.s_max = dd * total / (euler_e() * fp.gamma);
    opt.t_opt = 1.0 / (n * fp.gamma);
    return opt;
}

HighBetaApprox high_beta_approx(const SensingRun& run) {
    const double omega = run.probe.omega();
    const auto bundle = average_rate(run.geom, omega, run.bath);
    if (bundle.regime != Regime::StrongFerromagnetic || bundle.mixed_regime) {
        throw std::domain_error("high_beta_approx: requires the strong-ferromagnetic regime");
    }
    const double hb = run.bath.hbar_beta();
    const double total = static_cast<double>(run.probe.total_spins);
    const double dd = run.cpmg ? cpmg_amplitude * cpmg_amplitude : 1.0;

    double denom = 0.0;
    double min_gap_exponent = inf;
    for (const auto& s : bundle.spins) {
        const double gm = std::abs(s.collective - omega);
        const double gp = std::abs(s.collective + omega);
        denom += s.gamma_minus * std::exp(-hb * gm) + s.gamma_plus * std::exp(-hb * gp);
        min_gap_exponent = std::min(min_gap_exponent, hb * gm);
    }
    denom /= static_cast<double>(bundle.spins.size());

    HighBetaApprox out;
    out.s_max = denom == 0.0 ? inf : dd * total / (euler_e() * denom);
    out.valid = min_gap_exponent > 3.0;
    return out;
}

SensitivityResult sensitivity(const SensingRun& run) {
    if (!(run.time > 0.0)) throw std::invalid_argument("sensitivity: requires time > 0");
    const double m = static_cast<double>(run.probe.cluster_count);

    SensitivityResult out;
    out.p = probability(run);
    out.fisher_information = fisher(run);
    out.sensitivity = m * out.fisher_information / run.time;
    out.optimum = optimize(run);
    out.regime = out.optimum.regime;

    const auto bundle = average_rate(run.geom, run.probe.omega(), run.bath);
    out.mixed_regime = bundle.mixed_regime;
    if (bundle.regime == Regime::StrongFerromagnetic && !bundle.mixed_regime) {
        out.high_beta = high_beta_approx(run).s_max;
    }
    return out;
}

}  // namespace spinsense
