#pragma once

// Coherent, Dicke, one-axis, two-axis and tri-axis twisted states, plus the
// closed forms for small j.

#include "triaxis/spinalg.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace triaxis {

/// Twisting parameters (mu0, mu1, mu2), xi = mu1 - i mu2.
struct TwistParams {
    double mu0 = 0.0;
    double mu1 = 0.0;
    double mu2 = 0.0;

    Complex xi() const noexcept { return {mu1, -mu2}; }
    double abs_xi() const noexcept;
    /// sqrt(mu0^2 + 3|xi|^2)
    double vartheta() const noexcept;
};

/// Direction on the Bloch sphere. Construction folds phi into [0, 2pi).
class BlochDirection {
public:
    BlochDirection() = default;
    /// Throws InvalidArgument unless theta is in [0, pi] and both are finite.
    BlochDirection(double theta, double phi);

    double theta() const noexcept { return theta_; }
    double phi() const noexcept { return phi_; }
    /// Stereographic coordinate tau = tan(theta/2) e^{-i phi}.
    Complex tau() const;

private:
    double theta_ = 0.0;
    double phi_ = 0.0;
};

enum class ParityLabel { even, odd, mixed };

struct Parity {
    ParityLabel label = ParityLabel::mixed;
    double max_violation = 0.0;
};

std::string to_string(ParityLabel p);

/// c_n = sqrt(C(2j,n)) cos^{2j-n}(theta/2) sin^n(theta/2) e^{-i n phi}.
/// theta = 0 gives |j,-j>, theta = pi gives |j,+j>.
SpinState coherent_state(HalfInteger j, BlochDirection dir);

/// Unit vector at n = j + m, m given as 2m.
SpinState dicke_state(HalfInteger j, int two_m);

/// exp(-i mu Jz^2 / 2) |pi/2, 0>, evaluated from the amplitude formula.
SpinState oat_state(HalfInteger j, double mu);

/// exp(-i nu (JxJy + JyJx)) |j,-j>.
SpinState tact_state(HalfInteger j, double nu);

/// exp(-(i/2)[mu0 (J^2 - Jz^2) + mu1 (Jx^2 - Jy^2) + mu2 (JxJy + JyJx)]) applied to init.
SpinState triaxis_state(HalfInteger j, const TwistParams& p);
SpinState triaxis_state(HalfInteger j, const TwistParams& p, const SpinState& init);

/// Closed-form two-axis states for j in {1, 3/2, 2, 5/2}.
SpinState closed_form_tact(HalfInteger j, double nu);

/// Closed-form tri-axis states from |j,-j> for j in {1, 3/2}. The (mu0, mu)
/// overload is the real-mu case mu1 = mu, mu2 = 0.
SpinState closed_form_triaxis(HalfInteger j, const TwistParams& p);
SpinState closed_form_triaxis(HalfInteger j, double mu0, double mu);

Parity parity_of(const SpinState& psi);

/// 2|det Gamma| for the j = 1 state mapped onto two qubits.
double two_qubit_concurrence(const SpinState& psi);

/// |<a|b>|
double fidelity_up_to_phase(const SpinState& a, const SpinState& b);

// State file: "two_j = <int>" then 2j+1 lines "<re> <im>", ascending m.

/// Throws InvalidArgument on malformed input, or when |norm^2 - 1| > 1e-8
/// and renormalize is false.
SpinState read_state(std::istream& in, bool renormalize = false);
void write_state(std::ostream& out, const SpinState& psi);

} // namespace triaxis
