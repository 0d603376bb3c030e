#pragma once

// Majorana stellar representation: the polynomial whose roots, mapped onto
// the sphere, encode a pure spin-j state.

#include "triaxis/spinalg.hpp"
#include "triaxis/states.hpp"

#include <span>
#include <vector>

namespace triaxis {

/// coeffs[n] multiplies z^n; a_n = (-1)^n sqrt(C(2j, n)) c_n.
struct MajoranaPolynomial {
    HalfInteger j;
    std::vector<Complex> coeffs;
};

struct Constellation {
    HalfInteger j;
    std::vector<Complex> finite_roots;  // sorted by (|z|, arg z)
    int infinity_count = 0;
    /// Filled by to_sphere: finite roots in order, then the roots at infinity.
    std::vector<BlochDirection> sphere_points;
    /// Largest |p(z)| / (max|a| max(1,|z|)^deg) over the finite roots.
    double max_residual = 0.0;
};

MajoranaPolynomial polynomial_from_state(const SpinState& psi);

/// Inverse of polynomial_from_state.
SpinState state_from_polynomial(const MajoranaPolynomial& p);

/// F_N(z) = sum_n C(N,n) q^{n(N-n)} (-z)^n with q = e^{i mu/2}; equals
/// 2^j q^{j^2} times the polynomial of oat_state(N/2, mu). Requires 1 <= N <= 1000.
MajoranaPolynomial oat_normalized_polynomial(int n, double mu);

/// Roots of the Majorana polynomial. Coefficients above the highest one
/// exceeding 1e-12 max|a| count as roots at infinity.
Constellation find_roots(const MajoranaPolynomial& p);

/// Fills sphere_points: theta = 2 atan(1/|z|), phi = arg z in [0, 2pi);
/// roots at infinity map to (0, 0).
Constellation to_sphere(Constellation c);

/// Star direction of a single finite root.
BlochDirection star_direction(Complex z);

struct RootResult {
    std::vector<Complex> roots;
    double max_residual = 0.0;
    int iterations = 0;
};

/// All roots of sum_n coeffs[n] z^n, leading coefficient nonzero, by
/// Aberth-Ehrlich iteration. Throws NumericalError carrying the worst residual
/// if the residual contract |p(z)| <= 1e-10 max|a| max(1,|z|)^deg fails.
RootResult polynomial_roots(std::span<const Complex> coeffs);

/// p(z) by Horner.
Complex polyval(std::span<const Complex> coeffs, Complex z);

} // namespace triaxis
