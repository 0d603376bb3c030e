#pragma once

// Kitagawa-Ueda squeezing parameter in the frame perpendicular to the mean
// spin, the closed form for one-axis twisting, and survival probabilities.

#include "triaxis/spinalg.hpp"

#include <array>
#include <vector>

namespace triaxis {

using Vec3 = std::array<double, 3>;

struct SqueezingReport {
    Vec3 mean_spin{};
    double mean_norm = 0.0;
    Vec3 n1{};
    Vec3 n2{};
    /// Cov(J_a, J_b) = <{J_a, J_b}>/2 - <J_a><J_b>, a, b in {x, y, z}
    std::array<Vec3, 3> cov{};
    double A = 0.0;  // <J_n1^2 - J_n2^2>
    double B = 0.0;  // <{J_n1, J_n2}>
    double xi2 = 0.0;
    /// Minimal variance along n1 cos(phi_opt) + n2 sin(phi_opt).
    double phi_opt = 0.0;
};

/// (<Jx>, <Jy>, <Jz>). Throws NumericalError if an expectation has an
/// imaginary part above 1e-10.
Vec3 mean_spin(const SpinState& psi);

struct PerpFrame {
    Vec3 n1;
    Vec3 n2;
};

/// n1 = (-sin phi, cos phi, 0), n2 = (cos theta cos phi, cos theta sin phi, -sin theta)
/// for dir at spherical angles (theta, phi). Along +z phi = 0, along -z phi = pi.
/// Throws FrameUndefined for the zero vector.
PerpFrame perp_frame(const Vec3& dir);

/// Covariance of J.a and J.b; a variance when a == b. Inputs within 1e-9 of
/// unit length are normalized, anything else throws InvalidArgument.
double variance_cov(const SpinState& psi, const Vec3& a, const Vec3& b);

/// Throws FrameUndefined when |<J>| < 1e-8 j.
SqueezingReport squeezing_report(const SpinState& psi);

/// Same analysis in the frame perpendicular to an explicitly supplied
/// direction, for states whose mean spin vanishes.
SqueezingReport squeezing_report_along(const SpinState& psi, const Vec3& direction);

/// Closed-form one-axis-twisting xi^2 for N = 2j spins; 1 for N = 1.
double oat_xi_closed(int n, double mu);

/// |<psi0| exp(-iHt) |psi0>|^2
double survival_probability(const SpinState& psi0, const HermitianOperator& h, double t);

/// survival_probability at each t, sharing one eigendecomposition.
std::vector<double> survival_curve(const SpinState& psi0, const HermitianOperator& h,
                                   const std::vector<double>& times);

} // namespace triaxis
