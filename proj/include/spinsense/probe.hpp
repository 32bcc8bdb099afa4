// probe.hpp — Probe bookkeeping: N spins split into M clusters of size N/M,
// sensing the frequency w = w0 + dw.

#pragma once

#include <cstddef>
#include <stdexcept>

namespace spinsense {

struct ProbeSpec {
    std::size_t total_spins{1};   // N
    std::size_t cluster_count{1}; // M, with M * cluster_size = N
    double omega0{1.0};           // reference frequency (1 in natural units)
    double delta_omega{0.0};      // small deviation to estimate

    ProbeSpec() = default;
    ProbeSpec(std::size_t n, std::size_t m, double w0, double dw = 0.0)
        : total_spins(n), cluster_count(m), omega0(w0), delta_omega(dw) {
        if (n < 1 || m < 1) throw std::invalid_argument("ProbeSpec: N and M must be >= 1");
        if (n % m != 0) throw std::invalid_argument("ProbeSpec: M must divide N");
        if (!(w0 > 0.0)) throw std::invalid_argument("ProbeSpec: omega0 must be > 0");
        if (!(w0 + dw > 0.0)) throw std::invalid_argument("ProbeSpec: omega0 + delta_omega must be > 0");
    }

    std::size_t cluster_size() const { return total_spins / cluster_count; }
    double omega() const { return omega0 + delta_omega; }
};

}  // namespace spinsense
