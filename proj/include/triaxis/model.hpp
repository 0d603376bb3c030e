#pragma once

// Tri-axis Hamiltonian
//   H = (chi0/2)(J^2 - Jz^2) + (chi1/2)(Jx^2 - Jy^2) + (chi2/2)(JxJy + JyJx)
// and its asymmetric-rotor form after a rotation about z.

#include "triaxis/spinalg.hpp"

namespace triaxis {

struct Couplings {
    double chi0 = 0.0;
    double chi1 = 0.0;
    double chi2 = 0.0;
};

/// theta_rot = arg(chi1 - i chi2)/2 in (-pi/2, pi/2], chi = |chi1 - i chi2|.
struct RotorParams {
    double theta_rot = 0.0;
    double chi = 0.0;
};

HermitianOperator triaxis_hamiltonian(HalfInteger j, const Couplings& c);

/// chi1 = chi2 = 0 gives theta_rot = 0, chi = 0.
RotorParams rotation_params(const Couplings& c);

/// H' = ((chi0+chi)/2) Jx^2 + ((chi0-chi)/2) Jy^2. Throws InvalidArgument for chi < 0.
HermitianOperator rotated_hamiltonian(HalfInteger j, double chi0, double chi);

/// exp(-i theta Jz); maps H onto the rotated form: R H R^H = H'.
Matrix rotation_z(HalfInteger j, double theta);

/// (-1)^(Jz + j): diagonal +1 on even n, -1 on odd n.
Matrix parity_operator(HalfInteger j);

} // namespace triaxis
