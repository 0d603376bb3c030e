#include "triaxis/model.hpp"

#include "triaxis/error.hpp"

#include <cmath>
#include <sstream>

namespace triaxis {

namespace {

void require_finite(const Couplings& c) {
    if (!std::isfinite(c.chi0) || !std::isfinite(c.chi1) || !std::isfinite(c.chi2))
        throw InvalidArgument("couplings must be finite");
}

} // namespace

HermitianOperator triaxis_hamiltonian(HalfInteger j, const Couplings& c) {
    require_finite(c);
    const auto ops = build_spin_operators(j);
    const Matrix jx2 = ops.jx * ops.jx;
    const Matrix jy2 = ops.jy * ops.jy;
    const Matrix jz2 = ops.jz * ops.jz;
    Matrix h = (0.5 * c.chi0) * (ops.jsq - jz2);
    h += (0.5 * c.chi1) * (jx2 - jy2);
    h += (0.5 * c.chi2) * (ops.jx * ops.jy + ops.jy * ops.jx);
    return HermitianOperator(std::move(h));
}

RotorParams rotation_params(const Couplings& c) {
    require_finite(c);
    RotorParams p;
    p.chi = std::hypot(c.chi1, c.chi2);
    if (p.chi == 0.0)
        return p;
    // atan2 returns (-pi, pi]; a signed zero in the imaginary part would flip
    // arg(-1) to -pi, so normalize it.
    const double im = c.chi2 == 0.0 ? 0.0 : -c.chi2;
    p.theta_rot = 0.5 * std::atan2(im, c.chi1);
    return p;
}

HermitianOperator rotated_hamiltonian(HalfInteger j, double chi0, double chi) {
    if (!std::isfinite(chi0) || !std::isfinite(chi))
        throw InvalidArgument("couplings must be finite");
    if (chi < 0.0) {
        std::ostringstream os;
        os << "rotor anisotropy chi must be non-negative, got " << chi;
        throw InvalidArgument(os.str());
    }
    const auto ops = build_spin_operators(j);
    Matrix h = (0.5 * (chi0 + chi)) * (ops.jx * ops.jx);
    h += (0.5 * (chi0 - chi)) * (ops.jy * ops.jy);
    return HermitianOperator(std::move(h));
}

Matrix rotation_z(HalfInteger j, double theta) {
    Matrix r(j.dim());
    for (std::size_t n = 0; n < j.dim(); ++n) {
        const double m = -j.value() + static_cast<double>(n);
        r(n, n) = std::polar(1.0, -theta * m);
    }
    return r;
}

Matrix parity_operator(HalfInteger j) {
    Matrix p(j.dim());
    for (std::size_t n = 0; n < j.dim(); ++n)
        p(n, n) = n % 2 == 0 ? 1.0 : -1.0;
    return p;
}

} // namespace triaxis
