#include "triaxis/semiclassical.hpp"

#include "triaxis/error.hpp"
#include "triaxis/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace triaxis {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double pole_guard = 1e-9;

FixedPointKind classify(double a, double b, double tol) {
    if (std::abs(a) <= tol || std::abs(b) <= tol)
        return FixedPointKind::degenerate;
    return (a > 0.0) == (b > 0.0) ? FixedPointKind::elliptic : FixedPointKind::hyperbolic;
}

} // namespace

std::string to_string(FixedPointKind k) {
    switch (k) {
    case FixedPointKind::elliptic:
        return "elliptic";
    case FixedPointKind::hyperbolic:
        return "hyperbolic";
    case FixedPointKind::degenerate:
        break;
    }
    return "degenerate";
}

double classical_energy(double theta, double phi, const Couplings& c) {
    const double s2 = std::sin(theta) * std::sin(theta);
    return 0.5 * s2 * (c.chi0 + c.chi1 * std::cos(2.0 * phi) + c.chi2 * std::sin(2.0 * phi));
}

std::pair<double, double> eom_rhs(double theta, double phi, const Couplings& c) {
    const double st = std::sin(theta), ct = std::cos(theta);
    const double c2 = std::cos(2.0 * phi), s2 = std::sin(2.0 * phi);
    const double dtheta = c.chi2 * st * st * c2 - c.chi1 * st * st * s2;
    const double dphi = -(c.chi0 + c.chi1 * c2 + c.chi2 * s2) * st * ct;
    return {dtheta, dphi};
}

Trajectory integrate_rk4(ClassicalState s0, const Couplings& c, double dt, long n_steps,
                         long record_every) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidArgument("time step must be positive and finite");
    if (n_steps < 0)
        throw InvalidArgument("step count must be non-negative");
    if (record_every < 1)
        throw InvalidArgument("record interval must be at least 1");
    if (!(s0.theta > 0.0 && s0.theta < pi) || !std::isfinite(s0.phi))
        throw InvalidArgument("trajectory must start strictly between the poles");

    Trajectory tr;
    auto record = [&](const ClassicalState& s) {
        tr.states.push_back(s);
        tr.energies.push_back(classical_energy(s.theta, s.phi, c));
    };
    record(s0);
    ClassicalState s = s0;
    for (long step = 1; step <= n_steps; ++step) {
        const auto [k1t, k1p] = eom_rhs(s.theta, s.phi, c);
        const auto [k2t, k2p] = eom_rhs(s.theta + 0.5 * dt * k1t, s.phi + 0.5 * dt * k1p, c);
        const auto [k3t, k3p] = eom_rhs(s.theta + 0.5 * dt * k2t, s.phi + 0.5 * dt * k2p, c);
        const auto [k4t, k4p] = eom_rhs(s.theta + dt * k3t, s.phi + dt * k3p, c);
        s.theta += dt / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        s.phi += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        s.t = s0.t + dt * static_cast<double>(step);
        const bool out = !(s.theta > pole_guard && s.theta < pi - pole_guard);
        if (out || step % record_every == 0 || step == n_steps)
            record(s);
        if (out) {
            tr.hit_pole = true;
            break;
        }
    }
    return tr;
}

std::vector<FixedPoint> find_fixed_points(double chi0, double chi, double tol) {
    const double scale = tol * std::max({1.0, std::abs(chi0), std::abs(chi)});
    const Couplings c{chi0, chi, 0.0};
    std::vector<FixedPoint> out;

    // Near either pole E ~ (chi0 + chi) x^2 / 2 + (chi0 - chi) y^2 / 2.
    for (const double th : {0.0, pi}) {
        FixedPoint f;
        f.theta = th;
        f.phi = 0.0;
        f.energy = classical_energy(th, 0.0, c);
        f.hessian_eigs = {chi0 + chi, chi0 - chi};
        f.kind = classify(f.hessian_eigs[0], f.hessian_eigs[1], scale);
        out.push_back(f);
    }
    for (const double ph : {0.0, 0.5 * pi, pi, 1.5 * pi}) {
        FixedPoint f;
        f.theta = 0.5 * pi;
        f.phi = ph;
        f.energy = classical_energy(f.theta, ph, c);
        // cos(2 phi) is exactly +-1 at these angles.
        const double c2 = std::lround(ph / (0.5 * pi)) % 2 == 0 ? 1.0 : -1.0;
        f.hessian_eigs = {-(chi0 + chi * c2), -2.0 * chi * c2};
        f.kind = classify(f.hessian_eigs[0], f.hessian_eigs[1], scale);
        out.push_back(f);
    }
    for (const auto& f : out) {
        const auto [a, b] = eom_rhs(f.theta, f.phi, c);
        if (std::hypot(a, b) > 1e-10 * std::max(1.0, std::abs(chi0) + std::abs(chi)))
            throw NumericalError("fixed-point candidate has non-vanishing flow");
    }
    return out;
}

double separatrix_energy(double chi0, double chi) {
    if (!(chi0 > chi && chi > 0.0)) {
        std::ostringstream os;
        os << "no hyperbolic equatorial point unless chi0 > chi > 0 (got chi0 = " << chi0
           << ", chi = " << chi << ")";
        throw InvalidArgument(os.str());
    }
    return 0.5 * (chi0 - chi);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr) {
    out << "t,theta,phi,energy\n";
    for (std::size_t i = 0; i < tr.states.size(); ++i)
        out << format_double(tr.states[i].t) << ',' << format_double(tr.states[i].theta) << ','
            << format_double(tr.states[i].phi) << ',' << format_double(tr.energies[i]) << '\n';
}

} // namespace triaxis
