#pragma once

// Husimi Q function Q(theta, phi) = (2j+1)/(4 pi) |<theta,phi|psi>|^2 on the
// Bloch sphere, with the same coherent-state convention as coherent_state().

#include "triaxis/spinalg.hpp"
#include "triaxis/states.hpp"

#include <ostream>
#include <vector>

namespace triaxis {

struct GaussLegendre {
    std::vector<double> nodes;    // descending in [-1, 1]
    std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

struct QGrid {
    int n_theta = 0;
    int n_phi = 0;
    std::vector<double> theta_nodes;    // acos of Gauss-Legendre nodes, ascending
    std::vector<double> theta_weights;  // Gauss-Legendre weights in cos(theta)
    std::vector<double> phi_nodes;      // 2 pi k / n_phi
    std::vector<double> values;         // theta-major, n_theta x n_phi
    bool cartesian = false;
    /// (Q sin th cos ph, Q sin th sin ph, Q cos th) per node when cartesian.
    std::vector<double> x, y, z;

    double at(int it, int ip) const {
        return values[static_cast<std::size_t>(it) * static_cast<std::size_t>(n_phi) +
                      static_cast<std::size_t>(ip)];
    }
};

double q_value(const SpinState& psi, BlochDirection dir);

/// Throws InvalidArgument unless n_theta >= 2 and n_phi >= 2.
QGrid q_grid(const SpinState& psi, int n_theta, int n_phi, bool cartesian = false,
             unsigned threads = 1);

/// Quadrature of the grid values over the sphere.
double q_integral(const QGrid& g);

/// Integral of Q over the sphere on a grid of 2j+1 Gauss nodes and 4j+2 phi
/// nodes, enough to integrate exactly.
double q_normalization(const SpinState& psi);

/// Columns theta, phi, Q[, x, y, z].
void write_q_csv(std::ostream& out, const QGrid& g);

} // namespace triaxis
