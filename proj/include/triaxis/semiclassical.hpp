#pragma once

// Classical energy surface of the tri-axis model on the Bloch sphere,
//   E(theta, phi) = (chi0/2) sin^2 th + (chi1/2) sin^2 th cos 2ph + (chi2/2) sin^2 th sin 2ph,
// with the equations of motion taken as theta' = dE/dphi, phi' = -dE/dtheta.
// That pair is not canonical (the canonical one is (phi, cos theta), which
// rescales time by sin theta); fixed points and their stability agree.

#include "triaxis/model.hpp"

#include <array>
#include <string>
#include <ostream>
#include <utility>
#include <vector>

namespace triaxis {

struct ClassicalState {
    double theta = 0.0;
    double phi = 0.0;
    double t = 0.0;
};

enum class FixedPointKind { elliptic, hyperbolic, degenerate };

std::string to_string(FixedPointKind k);

struct FixedPoint {
    double theta = 0.0;
    double phi = 0.0;
    double energy = 0.0;
    FixedPointKind kind = FixedPointKind::degenerate;
    /// Diagonal Hessian entries; at the poles in local Cartesian coordinates
    /// (x, y) = theta (cos phi, sin phi), on the equator in (theta, phi).
    std::array<double, 2> hessian_eigs{};
};

double classical_energy(double theta, double phi, const Couplings& c);

/// (dtheta/dt, dphi/dt)
std::pair<double, double> eom_rhs(double theta, double phi, const Couplings& c);

struct Trajectory {
    std::vector<ClassicalState> states;
    std::vector<double> energies;
    /// True when integration stopped because theta left (1e-9, pi - 1e-9).
    bool hit_pole = false;
};

/// Fixed-step RK4. Records every record_every-th step plus the start and the
/// last step taken. Throws InvalidArgument for dt <= 0, n_steps < 0,
/// record_every < 1, or a start outside (0, pi).
Trajectory integrate_rk4(ClassicalState s0, const Couplings& c, double dt, long n_steps,
                         long record_every = 1);

/// Candidates in the rotated frame (chi1 = chi, chi2 = 0): both poles and the
/// equatorial points at phi = 0, pi/2, pi, 3pi/2, each classified from the
/// Hessian. |eigenvalue| <= tol max(1, |chi0|, |chi|) counts as degenerate.
std::vector<FixedPoint> find_fixed_points(double chi0, double chi, double tol = 1e-12);

/// Energy of the hyperbolic equatorial point, (chi0 - chi)/2. Requires
/// chi0 > chi > 0; throws InvalidArgument otherwise.
double separatrix_energy(double chi0, double chi);

/// Columns t, theta, phi, energy.
void write_trajectory_csv(std::ostream& out, const Trajectory& tr);

} // namespace triaxis
