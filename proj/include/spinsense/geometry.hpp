// geometry.hpp — 1-d spin chain geometry with power-law couplings
// J_{ij} = J * d(i,j)^(-alpha) and the collective coupling sums derived
// from it.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <limits>
#include <vector>

namespace spinsense {

// PaperLiteral measures distance along the open chain, d = |i-j|.
// Circular measures distance around the ring, d = min(|i-j|, n-|i-j|),
// which makes every row sum identical.
enum class DistanceConvention { PaperLiteral, Circular };

struct ClusterGeometry {
    std::size_t size{1};
    double alpha{0.0};  // +inf selects the nearest-neighbour-only limit
    double base_coupling{0.0};  // J; positive = ferromagnetic
    DistanceConvention distance{DistanceConvention::PaperLiteral};

    ClusterGeometry() = default;
    ClusterGeometry(std::size_t n, double a, double j,
                    DistanceConvention d = DistanceConvention::PaperLiteral);

    bool nearest_neighbor_only() const { return std::isinf(alpha); }

    static ClusterGeometry nearest_neighbor(std::size_t n, double j,
                                            DistanceConvention d = DistanceConvention::PaperLiteral) {
        return ClusterGeometry(n, std::numeric_limits<double>::infinity(), j, d);
    }
};

// Symmetric n x n matrix of pair couplings; diagonal entries are zero by
// convention and never read.
Eigen::MatrixXd coupling_matrix(const ClusterGeometry& geom);

// Row sum of the coupling matrix for one spin (0-based index).
double collective_coupling(const ClusterGeometry& geom, std::size_t spin);

// All row sums at once.
std::vector<double> collective_couplings(const ClusterGeometry& geom);

// The chain formula's reference spin, floor(n/2) in 1-based labels,
// returned 0-based. For n = 1 there is no pair sum and the index is 0.
std::size_t paper_reference_spin(std::size_t size);

// Single shared collective coupling: PaperLiteral evaluates the chain
// formula at the reference spin; Circular checks translation invariance and
// returns the common row sum.
double collective_coupling_uniform(const ClusterGeometry& geom);

}  // namespace spinsense
