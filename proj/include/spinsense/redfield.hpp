// redfield.hpp — Dense Born-Markov (Redfield) integration for small clusters,
// used as the brute-force oracle for the analytic GHZ coherence decay.
//
// The cluster Hamiltonian is diagonal in the sigma^z product basis, so each
// sigma^x_i splits into eigenoperators connecting basis states with definite
// Bohr frequency. The half-range bath integrals attach one-sided spectral
// weights to those elements: pi f(D)(n(D)+1) for emission at gap D > 0 and
// pi f(|D|) n(|D|) for absorption (Lamb-shift imaginary parts are dropped
// unless explicitly retained). The full non-secular generator keeps all
// cross terms; the secular option discards terms coupling different gap
// frequencies, which is the rotating-wave reading of the analytic result.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "spinsense/bath.hpp"
#include "spinsense/geometry.hpp"
#include "spinsense/probe.hpp"

namespace spinsense {

// Dense superoperators grow as 4^n; n = 4 (256 x 256) is the desk-scale cap.
inline constexpr std::size_t redfield_size_cap = 4;

// Projector onto the n-spin GHZ state (|up...up> + |down...down>)/sqrt(2).
// Basis convention: bit i of the index set = spin i up, so the nonzero
// entries sit in the four corners of the matrix.
Eigen::MatrixXcd ghz_state(std::size_t n);

// Diagonal cluster Hamiltonian over the 2^n product basis; energies stored
// as E/hbar (rad / time).
struct SpinHamiltonian {
    std::size_t n{1};
    Eigen::VectorXd energies;

    static SpinHamiltonian build(const ClusterGeometry& geom, double omega);
};

struct GeneratorOptions {
    bool secular{true};
    bool keep_lamb_shift{false};  // retain the principal-value imaginary parts
};

struct RedfieldGenerator {
    SpinHamiltonian hamiltonian;
    GeneratorOptions options;

    // Secular form: per spin, eigenoperator groups with Lindblad rates.
    struct Group {
        double delta{0.0};                                // Bohr frequency
        double rate{0.0};                                 // 2 w(delta)
        std::vector<std::pair<int, int>> transitions;     // (from, to) basis pairs
    };
    std::vector<std::vector<Group>> groups;  // [spin][group]

    // Non-secular form: per spin, the half-range convolution operators.
    std::vector<Eigen::MatrixXcd> b_ops;        // B_i = sum_D W(D) A_i(D)
    std::vector<Eigen::MatrixXcd> b_tilde_ops;  // conjugate-side counterpart
    std::vector<std::vector<int>> flip;         // sigma^x_i as an index permutation

    Eigen::Index dim() const { return hamiltonian.energies.size(); }

    // Dissipative part alone, and the full right-hand side including the
    // coherent commutator.
    Eigen::MatrixXcd dissipator(const Eigen::MatrixXcd& rho) const;
    Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho) const;
};

RedfieldGenerator build_generator(const ClusterGeometry& geom, double omega,
                                  const BathContext& bath, GeneratorOptions opts = {});

struct StepControl {
    double rel_tol{1e-9};
    double abs_tol{1e-12};
    double initial_dt{0.0};  // 0 = auto
    double min_dt{0.0};      // 0 = auto (1e-14 of the span)
};

// State-invariant tolerances checked on integrator output.
struct DensityTolerances {
    double hermiticity{1e-10};
    double trace{1e-10};
    double positivity{1e-8};
};

void check_density_matrix(const Eigen::MatrixXcd& rho, const DensityTolerances& tol = {});

// Adaptive Dormand-Prince integration of d rho/dt = rhs(rho) to time t.
Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, const RedfieldGenerator& gen, double t,
                        const StepControl& ctrl = {});

// Integrates once across a sorted time grid, invoking the callback at every
// grid point (including t = 0 if present).
void evolve_sampled(const Eigen::MatrixXcd& rho0, const RedfieldGenerator& gen,
                    const std::vector<double>& times,
                    const std::function<void(double, const Eigen::MatrixXcd&)>& on_sample,
                    const StepControl& ctrl = {});

// <Lambda> = Tr(rho (sigma^-)^(x)n): the all-up/all-down coherence element.
std::complex<double> lambda_expectation(const Eigen::MatrixXcd& rho);

// Outcome probability of the biased GHZ-subspace binary measurement.
double measure_povm(const Eigen::MatrixXcd& rho, double phi);

// ---------------------------------------------------------------------------
// Comparison against the closed-form decay
// ---------------------------------------------------------------------------

struct OracleRow {
    double t{0.0};
    double lambda_abs{0.0};
    double lambda_arg{0.0};
    double p{0.0};
    double lambda_abs_closed{0.0};
    double p_closed{0.0};
};

struct GeneratorComparison {
    std::vector<OracleRow> rows;
    double fitted_rate{0.0};       // exponential fit of |<Lambda>|
    double fitted_frequency{0.0};  // linear fit of the unwrapped phase
    double max_lambda_rel_dev{0.0};
    double max_p_abs_dev{0.0};
};

struct OracleReport {
    double gamma{0.0};             // cluster-average decay rate at omega
    double expected_rate{0.0};     // n Gamma / 2
    double expected_frequency{0.0};// n omega
    GeneratorComparison secular;
    GeneratorComparison nonsecular;
};

// Evolves the GHZ state with both generators across the grid and tabulates
// |<Lambda>|, its phase and p(t) against the closed forms.
OracleReport oracle_report(const ClusterGeometry& geom, const ProbeSpec& probe,
                           const BathContext& bath, const std::vector<double>& times,
                           const StepControl& ctrl = {});

}  // namespace spinsense
