#include "spinsense/geometry.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace spinsense {

ClusterGeometry::ClusterGeometry(std::size_t n, double a, double j, DistanceConvention d)
    : size(n), alpha(a), base_coupling(j), distance(d) {
    if (n < 1) throw std::invalid_argument("ClusterGeometry: size must be >= 1");
    if (std::isnan(a) || a < 0.0) {
        throw std::invalid_argument("ClusterGeometry: alpha must be >= 0 (couplings may not grow with distance)");
    }
    if (!std::isfinite(j)) throw std::invalid_argument("ClusterGeometry: base coupling must be finite");
}

namespace {

std::size_t pair_distance(const ClusterGeometry& geom, std::size_t i, std::size_t j) {
    const std::size_t lin = i > j ? i - j : j - i;
    if (geom.distance == DistanceConvention::Circular) {
        return std::min(lin, geom.size - lin);
    }
    return lin;
}

double pair_coupling(const ClusterGeometry& geom, std::size_t i, std::size_t j) {
    const double d = static_cast<double>(pair_distance(geom, i, j));
    if (geom.nearest_neighbor_only()) {
        return d == 1.0 ? geom.base_coupling : 0.0;
    }
    return geom.base_coupling * std::pow(d, -geom.alpha);
}

}  // namespace

Eigen::MatrixXd coupling_matrix(const ClusterGeometry& geom) {
    const auto n = static_cast<Eigen::Index>(geom.size);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double v = pair_coupling(geom, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            m(i, j) = v;
            m(j, i) = v;
        }
    }
    return m;
}

double collective_coupling(const ClusterGeometry& geom, std::size_t spin) {
    if (spin >= geom.size) throw std::out_of_range("collective_coupling: spin index out of range");
    double sum = 0.0;
    for (std::size_t j = 0; j < geom.size; ++j) {
        if (j == spin) continue;
        sum += pair_coupling(geom, spin, j);
    }
    return sum;
}

std::vector<double> collective_couplings(const ClusterGeometry& geom) {
    std::vector<double> out(geom.size);
    for (std::size_t i = 0; i < geom.size; ++i) out[i] = collective_coupling(geom, i);
    return out;
}

std::size_t paper_reference_spin(std::size_t size) {
    if (size <= 2) return 0;
    return size / 2 - 1;  // 1-based floor(n/2), shifted to 0-based
}

double collective_coupling_uniform(const ClusterGeometry& geom) {
    if (geom.size == 1) return 0.0;
    if (geom.distance == DistanceConvention::PaperLiteral) {
        return collective_coupling(geom, paper_reference_spin(geom.size));
    }
    const auto rows = collective_couplings(geom);
    const double ref = rows.front();
    const double scale = std::abs(geom.base_coupling) * static_cast<double>(geom.size);
    for (double r : rows) {
        if (std::abs(r - ref) > 1e-12 * (scale + 1.0)) {
            throw std::logic_error("collective_coupling_uniform: ring row sums are not uniform");
        }
    }
    return ref;
}

}  // namespace spinsense
