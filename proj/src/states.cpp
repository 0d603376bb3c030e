#include "triaxis/states.hpp"

#include "detail/binomial.hpp"
#include "triaxis/error.hpp"
#include "triaxis/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace triaxis {

namespace {

constexpr double pi = std::numbers::pi;

// sin(x/2)/x with its limit 1/2 at x = 0.
double half_sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 0.5 - x2 / 48.0 + x2 * x2 / 3840.0;
    }
    return std::sin(0.5 * x) / x;
}

void require_finite(const TwistParams& p) {
    if (!std::isfinite(p.mu0) || !std::isfinite(p.mu1) || !std::isfinite(p.mu2))
        throw InvalidArgument("twist parameters must be finite");
}

} // namespace

double TwistParams::abs_xi() const noexcept { return std::hypot(mu1, mu2); }

double TwistParams::vartheta() const noexcept {
    return std::sqrt(mu0 * mu0 + 3.0 * (mu1 * mu1 + mu2 * mu2));
}

BlochDirection::BlochDirection(double theta, double phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
        throw InvalidArgument("Bloch direction angles must be finite");
    if (theta < 0.0 || theta > pi) {
        std::ostringstream os;
        os << "polar angle must lie in [0, pi], got " << theta;
        throw InvalidArgument(os.str());
    }
    theta_ = theta;
    phi_ = std::fmod(phi, 2.0 * pi);
    if (phi_ < 0.0)
        phi_ += 2.0 * pi;
    if (phi_ >= 2.0 * pi)
        phi_ = 0.0;
}

Complex BlochDirection::tau() const { return std::polar(std::tan(0.5 * theta_), -phi_); }

std::string to_string(ParityLabel p) {
    switch (p) {
    case ParityLabel::even:
        return "even";
    case ParityLabel::odd:
        return "odd";
    case ParityLabel::mixed:
        break;
    }
    return "mixed";
}

SpinState coherent_state(HalfInteger j, BlochDirection dir) {
    const int n2j = j.two_j();
    const auto b = detail::coherent_magnitudes(n2j, dir.theta());
    std::vector<Complex> amps(j.dim());
    for (int n = 0; n <= n2j; ++n)
        amps[static_cast<std::size_t>(n)] =
            std::polar(1.0, -n * dir.phi()) * b[static_cast<std::size_t>(n)];
    return {j, std::move(amps)};
}

SpinState dicke_state(HalfInteger j, int two_m) {
    const int two_n = j.two_j() + two_m;
    if (two_m < -j.two_j() || two_m > j.two_j() || two_n % 2 != 0) {
        std::ostringstream os;
        os << "m = " << 0.5 * two_m << " is not a level of spin j = " << j.value();
        throw InvalidArgument(os.str());
    }
    std::vector<Complex> amps(j.dim());
    amps[static_cast<std::size_t>(two_n / 2)] = 1.0;
    return {j, std::move(amps)};
}

SpinState oat_state(HalfInteger j, double mu) {
    if (!std::isfinite(mu))
        throw InvalidArgument("twist mu must be finite");
    const int n2j = j.two_j();
    const auto b = detail::coherent_magnitudes(n2j, 0.5 * pi);
    std::vector<Complex> amps(j.dim());
    for (int n = 0; n <= n2j; ++n) {
        const double two_m = 2.0 * n - n2j;
        const double m2 = 0.25 * two_m * two_m;
        amps[static_cast<std::size_t>(n)] =
            std::polar(1.0, -0.5 * mu * m2) * b[static_cast<std::size_t>(n)];
    }
    return {j, std::move(amps)};
}

SpinState tact_state(HalfInteger j, double nu) {
    if (!std::isfinite(nu))
        throw InvalidArgument("twist nu must be finite");
    const auto ops = build_spin_operators(j);
    const HermitianOperator g(ops.jx * ops.jy + ops.jy * ops.jx);
    return evolve(g, nu, dicke_state(j, -j.two_j()));
}

SpinState triaxis_state(HalfInteger j, const TwistParams& p) {
    return triaxis_state(j, p, dicke_state(j, -j.two_j()));
}

SpinState triaxis_state(HalfInteger j, const TwistParams& p, const SpinState& init) {
    require_finite(p);
    if (init.j() != j)
        throw InvalidArgument("initial state spin does not match j");
    // The generator has exactly the tri-axis Hamiltonian's form, evolved for unit time.
    const auto g = triaxis_hamiltonian(j, Couplings{p.mu0, p.mu1, p.mu2});
    return evolve(g, 1.0, init);
}

SpinState closed_form_tact(HalfInteger j, double nu) {
    std::vector<Complex> a(j.dim());
    switch (j.two_j()) {
    case 2:
        a[2] = -std::sin(nu);
        a[0] = std::cos(nu);
        break;
    case 3: {
        const double u = std::sqrt(3.0) * nu;
        a[2] = -std::sin(u);
        a[0] = std::cos(u);
        break;
    }
    case 4: {
        const double u = std::sqrt(3.0) * nu;
        const double s = std::sin(u), c = std::cos(u);
        a[4] = s * s;
        a[2] = -std::sin(2.0 * u) / std::sqrt(2.0);
        a[0] = c * c;
        break;
    }
    case 5: {
        const double u = std::sqrt(7.0) * nu;
        const double s = std::sin(u), c = std::cos(u);
        a[4] = 3.0 * std::sqrt(5.0) / 7.0 * s * s;
        a[2] = -std::sqrt(10.0 / 7.0) * s * c;
        a[0] = 1.0 - 5.0 / 7.0 * s * s;
        break;
    }
    default:
        throw InvalidArgument("closed-form two-axis state available for j in {1, 3/2, 2, 5/2}, got j = " +
                              std::to_string(j.value()));
    }
    return {j, std::move(a)};
}

SpinState closed_form_triaxis(HalfInteger j, const TwistParams& p) {
    require_finite(p);
    std::vector<Complex> a(j.dim());
    const Complex xi = p.xi();
    const Complex i(0.0, 1.0);
    switch (j.two_j()) {
    case 2: {
        const double ax = p.abs_xi();
        const Complex ph = std::polar(1.0, -0.5 * p.mu0);
        // -i (xi/|xi|) sin(|xi|/2) written as -i xi half_sinc(|xi|) to stay finite at xi = 0
        a[2] = ph * (-i * xi * half_sinc(ax));
        a[0] = ph * std::cos(0.5 * ax);
        break;
    }
    case 3: {
        // Basis {|3/2,1/2>, |3/2,-3/2>}; coefficients with the +i mu0 sign,
        // which is what exp(-iG)|3/2,-3/2> produces.
        const double th = p.vartheta();
        const Complex ph = std::polar(1.0, -1.25 * p.mu0);
        a[2] = ph * (-std::sqrt(3.0) * i * xi * half_sinc(th));
        a[0] = ph * (std::cos(0.5 * th) + i * p.mu0 * half_sinc(th));
        break;
    }
    default:
        throw InvalidArgument("closed-form tri-axis state available for j in {1, 3/2}, got j = " +
                              std::to_string(j.value()));
    }
    return {j, std::move(a)};
}

SpinState closed_form_triaxis(HalfInteger j, double mu0, double mu) {
    return closed_form_triaxis(j, TwistParams{mu0, mu, 0.0});
}

Parity parity_of(const SpinState& psi) {
    double even = 0.0, odd = 0.0;
    for (std::size_t n = 0; n < psi.dim(); ++n) {
        double& sector = n % 2 == 0 ? even : odd;
        sector = std::max(sector, std::abs(psi[n]));
    }
    constexpr double tol = 1e-12;
    if (odd <= tol)
        return {ParityLabel::even, odd};
    if (even <= tol)
        return {ParityLabel::odd, even};
    return {ParityLabel::mixed, std::min(even, odd)};
}

double two_qubit_concurrence(const SpinState& psi) {
    if (psi.j().two_j() != 2)
        throw InvalidArgument("two-qubit concurrence requires j = 1, got j = " +
                              std::to_string(psi.j().value()));
    // |1,1> -> |00>, |1,0> -> (|01>+|10>)/sqrt2, |1,-1> -> |11>
    const Complex g00 = psi[2];
    const Complex g01 = psi[1] / std::sqrt(2.0);
    const Complex g11 = psi[0];
    return 2.0 * std::abs(g00 * g11 - g01 * g01);
}

double fidelity_up_to_phase(const SpinState& a, const SpinState& b) {
    return std::abs(inner(a, b));
}

} // namespace triaxis
