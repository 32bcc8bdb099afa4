#include "spinsense/redfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "quad_panels.hpp"
#include "spinsense/estimation.hpp"
#include "spinsense/rates.hpp"

namespace spinsense {

namespace {

constexpr double pi = std::numbers::pi;

void check_size_cap(std::size_t n) {
    if (n < 1) throw std::invalid_argument("redfield: cluster size must be >= 1");
    if (n > redfield_size_cap) {
        throw std::invalid_argument("redfield: cluster size exceeds the dense-oracle cap of 4");
    }
}

double spin_sign(int basis, std::size_t spin) {
    return (basis >> spin) & 1 ? 1.0 : -1.0;
}

// One-sided spectral weight Re W(delta) for a transition with Bohr
// frequency delta; emission for delta > 0, absorption for delta < 0.
double one_sided_weight(double delta, double zero_tol, const BathContext& bath) {
    if (std::abs(delta) <= zero_tol) {
        // Continuous extension at a degenerate zero gap: the mean of the
        // emission and absorption limits.
        const auto& sd = bath.spectral;
        double f0 = 0.0;
        if (sd.amplitude > 0.0) {
            if (sd.exponent == 0.0) f0 = sd.amplitude;
            if (sd.exponent < 0.0) f0 = std::numeric_limits<double>::infinity();
        }
        const double product_limit = boundary_rate_term(sd, bath);
        const double w0 = 0.5 * product_limit + 0.5 * pi * f0;
        if (std::isinf(w0)) {
            throw std::runtime_error("redfield: zero-gap element with sub-Ohmic bath diverged");
        }
        return w0;
    }
    if (delta > 0.0) return pi * bath.spectral(delta) * (occupation(bath, delta) + 1.0);
    return pi * bath.spectral(-delta) * occupation(bath, -delta);
}

// Principal-value (Lamb shift) part Im W(delta), regularized with the same
// damping as the rate integrals and extrapolated in the regularizer.
double lamb_shift_weight(double delta, double omega_scale, const BathContext& bath) {
    if (bath.spectral.amplitude == 0.0) return 0.0;
    const double hb = bath.hbar_beta();
    const double thermal = std::isinf(hb) ? omega_scale : 1.0 / hb;
    const double omega_min = 1e-6 * omega_scale;
    const double omega_max = 40.0 * std::max({std::abs(delta), thermal, omega_scale});
    const double eps0 = 0.005 * std::min(omega_scale, thermal);

    const std::vector<double> centers = {std::abs(delta)};
    const auto pts = detail::build_breakpoints(omega_min, omega_max, hb, centers, eps0 / 8.0, 1.0);
    const auto table = detail::tabulate(pts, bath);

    std::array<double, 4> eps{}, val{};
    for (int i = 0; i < 4; ++i) {
        eps[i] = eps0 / static_cast<double>(1 << i);
        const double e2 = eps[i] * eps[i];
        val[i] = detail::integrate(table, [&](double x, double gp, double gm) {
            const double dm = x - delta;
            const double dp = x + delta;
            return -gp * dm / (e2 + dm * dm) + gm * dp / (e2 + dp * dp);
        });
    }
    return detail::extrapolate4(eps, val);
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

Eigen::MatrixXcd ghz_state(std::size_t n) {
    check_size_cap(n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    rho(0, 0) = 0.5;
    rho(0, dim - 1) = 0.5;
    rho(dim - 1, 0) = 0.5;
    rho(dim - 1, dim - 1) = 0.5;
    return rho;
}

SpinHamiltonian SpinHamiltonian::build(const ClusterGeometry& geom, double omega) {
    check_size_cap(geom.size);
    SpinHamiltonian h;
    h.n = geom.size;
    const int dim = 1 << geom.size;
    const Eigen::MatrixXd couplings = coupling_matrix(geom);
    h.energies.resize(dim);
    for (int b = 0; b < dim; ++b) {
        double zeeman = 0.0;
        double pair = 0.0;
        for (std::size_t i = 0; i < geom.size; ++i) {
            const double si = spin_sign(b, i);
            zeeman += si;
            for (std::size_t j = i + 1; j < geom.size; ++j) {
                pair += couplings(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *
                        si * spin_sign(b, j);
            }
        }
        h.energies(b) = 0.5 * omega * zeeman - 0.5 * pair;
    }
    return h;
}

RedfieldGenerator build_generator(const ClusterGeometry& geom, double omega,
                                  const BathContext& bath, GeneratorOptions opts) {
    if (!(omega > 0.0)) throw std::domain_error("build_generator: requires omega > 0");
    check_size_cap(geom.size);

    RedfieldGenerator gen;
    gen.hamiltonian = SpinHamiltonian::build(geom, omega);
    gen.options = opts;
    const int dim = 1 << geom.size;
    const double energy_scale = std::max(gen.hamiltonian.energies.cwiseAbs().maxCoeff(), omega);
    const double zero_tol = 1e-12 * energy_scale;
    const double group_tol = 1e-9 * energy_scale;

    gen.groups.resize(geom.size);
    gen.b_ops.assign(geom.size, Eigen::MatrixXcd::Zero(dim, dim));
    gen.b_tilde_ops.assign(geom.size, Eigen::MatrixXcd::Zero(dim, dim));
    gen.flip.resize(geom.size);

    for (std::size_t i = 0; i < geom.size; ++i) {
        gen.flip[i].resize(dim);
        for (int b = 0; b < dim; ++b) gen.flip[i][b] = b ^ (1 << i);

        // Group the directed sigma^x_i elements by Bohr frequency.
        auto& spin_groups = gen.groups[i];
        for (int b = 0; b < dim; ++b) {
            const int target = gen.flip[i][b];
            const double delta = gen.hamiltonian.energies(b) - gen.hamiltonian.energies(target);
            auto it = std::find_if(spin_groups.begin(), spin_groups.end(), [&](const auto& g) {
                return std::abs(g.delta - delta) <= group_tol;
            });
            if (it == spin_groups.end()) {
                spin_groups.push_back({delta, 0.0, {}});
                it = std::prev(spin_groups.end());
            }
            it->transitions.emplace_back(b, target);
        }

        for (auto& g : spin_groups) {
            const double w = one_sided_weight(g.delta, zero_tol, bath);
            g.rate = 2.0 * w;
            const double s = opts.keep_lamb_shift ? lamb_shift_weight(g.delta, omega, bath) : 0.0;
            const double s_rev = opts.keep_lamb_shift ? lamb_shift_weight(-g.delta, omega, bath) : 0.0;
            const double w_rev = one_sided_weight(-g.delta, zero_tol, bath);
            const std::complex<double> forward{w, s};
            const std::complex<double> reverse{w_rev, -s_rev};
            for (const auto& [from, to] : g.transitions) {
                gen.b_ops[i](to, from) += forward;
                gen.b_tilde_ops[i](to, from) += reverse;
            }
        }
    }
    return gen;
}

Eigen::MatrixXcd RedfieldGenerator::dissipator(const Eigen::MatrixXcd& rho) const {
    const Eigen::Index dim_ = rho.rows();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_, dim_);

    if (options.secular) {
        for (const auto& spin_groups : groups) {
            for (const auto& g : spin_groups) {
                if (g.rate == 0.0) continue;
                // A rho A^dag: scatter the source block onto the targets.
                for (const auto& [f1, t1] : g.transitions) {
                    for (const auto& [f2, t2] : g.transitions) {
                        out(t1, t2) += g.rate * rho(f1, f2);
                    }
                }
                // -(1/2){A^dag A, rho}: A^dag A projects onto the sources.
                for (const auto& [f1, t1] : g.transitions) {
                    (void)t1;
                    out.row(f1) -= 0.5 * g.rate * rho.row(f1);
                    out.col(f1) -= 0.5 * g.rate * rho.col(f1);
                }
            }
        }
        return out;
    }

    for (std::size_t i = 0; i < b_ops.size(); ++i) {
        const Eigen::MatrixXcd x = b_ops[i] * rho;       // B rho
        const Eigen::MatrixXcd z = rho * b_tilde_ops[i]; // rho B~
        const auto& fl = flip[i];
        for (Eigen::Index r = 0; r < dim_; ++r) {
            for (Eigen::Index c = 0; c < dim_; ++c) {
                // [B rho, sigma] + [sigma, rho B~] with sigma the bit flip
                out(r, c) += x(r, fl[c]) - x(fl[r], c) + z(fl[r], c) - z(r, fl[c]);
            }
        }
    }
    return out;
}

Eigen::MatrixXcd RedfieldGenerator::rhs(const Eigen::MatrixXcd& rho) const {
    Eigen::MatrixXcd out = dissipator(rho);
    const auto& e = hamiltonian.energies;
    const Eigen::Index dim_ = rho.rows();
    const std::complex<double> minus_i{0.0, -1.0};
    for (Eigen::Index r = 0; r < dim_; ++r) {
        for (Eigen::Index c = 0; c < dim_; ++c) {
            out(r, c) += minus_i * (e(r) - e(c)) * rho(r, c);
        }
    }
    return out;
}

void check_density_matrix(const Eigen::MatrixXcd& rho, const DensityTolerances& tol) {
    const double herm = max_abs(rho - rho.adjoint());
    if (herm > tol.hermiticity) {
        throw std::runtime_error("density matrix lost hermiticity: " + std::to_string(herm));
    }
    const double trace_err = std::abs(rho.trace() - std::complex<double>{1.0, 0.0});
    if (trace_err > tol.trace) {
        throw std::runtime_error("density matrix lost unit trace: " + std::to_string(trace_err));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (rho + rho.adjoint()));
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < -tol.positivity) {
        throw std::runtime_error("density matrix lost positivity: " + std::to_string(min_eig));
    }
}

namespace {

// Dormand-Prince 5(4) pair with adaptive step control.
class DormandPrince {
public:
    DormandPrince(const RedfieldGenerator& gen, StepControl ctrl, double span)
        : gen_(gen), ctrl_(ctrl) {
        const double energy_span =
            gen.hamiltonian.energies.maxCoeff() - gen.hamiltonian.energies.minCoeff();
        const double rate_scale = 2.0 * energy_span + 1e-12;
        dt_ = ctrl.initial_dt > 0.0 ? ctrl.initial_dt : 0.1 / rate_scale;
        min_dt_ = ctrl.min_dt > 0.0 ? ctrl.min_dt : 1e-14 * std::max(span, 1.0 / rate_scale);
    }

    // Advances rho in place from t to t_end.
    void advance(Eigen::MatrixXcd& rho, double t, double t_end) {
        while (t < t_end) {
            double h = std::min(dt_, t_end - t);
            const bool clipped = h < dt_;
            if (try_step(rho, h)) {
                t += h;
                if (!clipped) dt_ = next_dt_;
                else dt_ = std::max(dt_, next_dt_);
            } else {
                dt_ = next_dt_;
                if (dt_ < min_dt_) {
                    throw std::runtime_error("evolve: step size underflow, integration failed");
                }
            }
        }
    }

private:
    bool try_step(Eigen::MatrixXcd& rho, double h) {
        const auto& g = gen_;
        const Eigen::MatrixXcd k1 = g.rhs(rho);
        const Eigen::MatrixXcd k2 = g.rhs(rho + h * (a21 * k1));
        const Eigen::MatrixXcd k3 = g.rhs(rho + h * (a31 * k1 + a32 * k2));
        const Eigen::MatrixXcd k4 = g.rhs(rho + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::MatrixXcd k5 = g.rhs(rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::MatrixXcd k6 =
            g.rhs(rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::MatrixXcd y5 =
            rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::MatrixXcd k7 = g.rhs(y5);
        const Eigen::MatrixXcd err = h * ((b1 - bs1) * k1 + (b3 - bs3) * k3 + (b4 - bs4) * k4 +
                                          (b5 - bs5) * k5 + (b6 - bs6) * k6 - bs7 * k7);

        const double scale = ctrl_.abs_tol + ctrl_.rel_tol * std::max(max_abs(rho), max_abs(y5));
        const double err_norm = max_abs(err) / scale;
        const double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
        next_dt_ = h * std::clamp(factor, 0.2, 5.0);
        if (err_norm <= 1.0) {
            rho = y5;
            return true;
        }
        return false;
    }

    const RedfieldGenerator& gen_;
    StepControl ctrl_;
    double dt_{0.0};
    double next_dt_{0.0};
    double min_dt_{0.0};

    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double bs1 = 5179.0 / 57600.0, bs3 = 7571.0 / 16695.0, bs4 = 393.0 / 640.0,
                            bs5 = -92097.0 / 339200.0, bs6 = 187.0 / 2100.0, bs7 = 1.0 / 40.0;
};

}  // namespace

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, const RedfieldGenerator& gen, double t,
                        const StepControl& ctrl) {
    if (t < 0.0) throw std::invalid_argument("evolve: time must be >= 0");
    if (rho0.rows() != gen.dim() || rho0.cols() != gen.dim()) {
        throw std::invalid_argument("evolve: state dimension does not match the generator");
    }
    Eigen::MatrixXcd rho = rho0;
    if (t == 0.0) return rho;
    DormandPrince stepper(gen, ctrl, t);
    stepper.advance(rho, 0.0, t);
    check_density_matrix(rho);
    return rho;
}

void evolve_sampled(const Eigen::MatrixXcd& rho0, const RedfieldGenerator& gen,
                    const std::vector<double>& times,
                    const std::function<void(double, const Eigen::MatrixXcd&)>& on_sample,
                    const StepControl& ctrl) {
    if (times.empty()) return;
    if (!std::is_sorted(times.begin(), times.end()) || times.front() < 0.0) {
        throw std::invalid_argument("evolve_sampled: times must be sorted and non-negative");
    }
    Eigen::MatrixXcd rho = rho0;
    DormandPrince stepper(gen, ctrl, times.back());
    double t = 0.0;
    for (double target : times) {
        if (target > t) {
            stepper.advance(rho, t, target);
            t = target;
        }
        on_sample(t, rho);
    }
}

std::complex<double> lambda_expectation(const Eigen::MatrixXcd& rho) {
    return rho(rho.rows() - 1, 0);
}

double measure_povm(const Eigen::MatrixXcd& rho, double phi) {
    const std::complex<double> lam = lambda_expectation(rho);
    const double p = 0.5 + (std::exp(std::complex<double>{0.0, -phi}) * lam).real();
    if (p < -1e-9 || p > 1.0 + 1e-9) {
        throw std::runtime_error("measure_povm: probability outside [0,1], state corrupted");
    }
    return std::clamp(p, 0.0, 1.0);
}

namespace {

struct LineFit {
    double slope{0.0};
    double intercept{0.0};
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {0.0, y.empty() ? 0.0 : sy / n};
    return {(n * sxy - sx * sy) / denom, (sy * sxx - sx * sxy) / denom};
}

GeneratorComparison compare_generator(const RedfieldGenerator& gen, const ClusterGeometry& geom,
                                      const ProbeSpec& probe, const BathContext& bath,
                                      const std::vector<double>& times, const StepControl& ctrl,
                                      double gamma) {
    GeneratorComparison cmp;
    const double n = static_cast<double>(geom.size);
    const double omega = probe.omega();

    const Eigen::MatrixXcd rho0 = ghz_state(geom.size);
    cmp.rows.reserve(times.size());
    evolve_sampled(rho0, gen, times, [&](double t, const Eigen::MatrixXcd& rho) {
        check_density_matrix(rho);
        const auto lam = lambda_expectation(rho);
        const double phi = std::numbers::pi / 2.0 - n * probe.omega0 * t;
        OracleRow row;
        row.t = t;
        row.lambda_abs = std::abs(lam);
        row.lambda_arg = std::arg(lam);
        row.p = measure_povm(rho, phi);
        row.lambda_abs_closed = 0.5 * std::exp(-n * gamma * t / 2.0);
        SensingRun closed_run(probe, geom, bath, t);
        row.p_closed = probability(closed_run);
        cmp.rows.push_back(row);
    }, ctrl);

    // Exponential fit of |<Lambda>| above the noise floor.
    std::vector<double> ts, logs;
    for (const auto& row : cmp.rows) {
        if (row.lambda_abs > 1e-3) {
            ts.push_back(row.t);
            logs.push_back(std::log(row.lambda_abs));
        }
    }
    cmp.fitted_rate = ts.size() >= 2 ? -least_squares(ts, logs).slope : 0.0;

    for (const auto& row : cmp.rows) {
        if (row.lambda_abs_closed > 1e-3) {
            cmp.max_lambda_rel_dev =
                std::max(cmp.max_lambda_rel_dev,
                         std::abs(row.lambda_abs - row.lambda_abs_closed) / row.lambda_abs_closed);
        }
        cmp.max_p_abs_dev = std::max(cmp.max_p_abs_dev, std::abs(row.p - row.p_closed));
    }

    // Short dense window for the phase-accumulation fit; samples must
    // resolve the n*omega rotation to unwrap safely.
    const double window = 20.0 / (n * omega);
    std::vector<double> dense(400);
    for (std::size_t k = 0; k < dense.size(); ++k) {
        dense[k] = window * static_cast<double>(k) / static_cast<double>(dense.size() - 1);
    }
    std::vector<double> phase_t, phase;
    double unwrapped = 0.0;
    double prev = 0.0;
    bool first = true;
    evolve_sampled(rho0, gen, dense, [&](double t, const Eigen::MatrixXcd& rho) {
        const double raw = std::arg(lambda_expectation(rho));
        if (first) {
            unwrapped = raw;
            first = false;
        } else {
            double d = raw - prev;
            while (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
            while (d < -std::numbers::pi) d += 2.0 * std::numbers::pi;
            unwrapped += d;
        }
        prev = raw;
        phase_t.push_back(t);
        phase.push_back(unwrapped);
    }, ctrl);
    cmp.fitted_frequency = -least_squares(phase_t, phase).slope;
    return cmp;
}

}  // namespace

OracleReport oracle_report(const ClusterGeometry& geom, const ProbeSpec& probe,
                           const BathContext& bath, const std::vector<double>& times,
                           const StepControl& ctrl) {
    check_size_cap(geom.size);
    if (probe.cluster_size() != geom.size) {
        throw std::invalid_argument("oracle_report: probe cluster size must match the geometry");
    }
    const double omega = probe.omega();
    const auto bundle = average_rate(geom, omega, bath);
    if (bundle.diverged()) {
        throw std::runtime_error("oracle_report: diverged average rate (boundary with sub-Ohmic bath)");
    }

    OracleReport report;
    report.gamma = bundle.average;
    const double n = static_cast<double>(geom.size);
    report.expected_rate = n * bundle.average / 2.0;
    report.expected_frequency = n * omega;

    RedfieldGenerator secular = build_generator(geom, omega, bath, {.secular = true});
    RedfieldGenerator nonsecular = build_generator(geom, omega, bath, {.secular = false});
    report.secular = compare_generator(secular, geom, probe, bath, times, ctrl, bundle.average);
    report.nonsecular = compare_generator(nonsecular, geom, probe, bath, times, ctrl, bundle.average);
    return report;
}

}  // namespace spinsense
