#include "triaxis/squeezing.hpp"

#include "triaxis/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace triaxis {

namespace {

constexpr double pi = std::numbers::pi;

// J_x psi, J_y psi, J_z psi from the ladder structure; O(dim).
struct SpinImages {
    std::vector<Complex> x, y, z;
};

SpinImages spin_images(const SpinState& psi) {
    const std::size_t d = psi.dim();
    const long tj = psi.j().two_j();
    SpinImages im{std::vector<Complex>(d), std::vector<Complex>(d), std::vector<Complex>(d)};
    std::vector<Complex> up(d), down(d);
    for (std::size_t n = 0; n < d; ++n) {
        const long tm = -tj + 2 * static_cast<long>(n);
        im.z[n] = 0.5 * static_cast<double>(tm) * psi[n];
        if (n + 1 < d) {
            const double l = 0.5 * std::sqrt(static_cast<double>(tj * (tj + 2) - tm * (tm + 2)));
            up[n + 1] = l * psi[n];    // J+ |m> -> |m+1>
            down[n] = l * psi[n + 1];  // J- |m+1> -> |m>
        }
    }
    const Complex half_i(0.0, 0.5);
    for (std::size_t n = 0; n < d; ++n) {
        im.x[n] = 0.5 * (up[n] + down[n]);
        im.y[n] = -half_i * (up[n] - down[n]);
    }
    return im;
}

Complex braket(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i)
        s += std::conj(a[i]) * b[i];
    return s;
}

struct Moments {
    Vec3 mean{};
    std::array<Vec3, 3> second{};  // Re <J_k J_l>
};

Moments moments(const SpinState& psi) {
    const auto im = spin_images(psi);
    const std::array<const std::vector<Complex>*, 3> v{&im.x, &im.y, &im.z};
    Moments m;
    for (int k = 0; k < 3; ++k) {
        const Complex e = braket(psi.amplitudes(), *v[k]);
        if (std::abs(e.imag()) > 1e-10) {
            std::ostringstream os;
            os << "expectation of J" << "xyz"[k] << " has imaginary part " << e.imag();
            throw NumericalError(os.str());
        }
        m.mean[k] = e.real();
    }
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            const double s = braket(*v[k], *v[l]).real();
            m.second[k][l] = s;
            m.second[l][k] = s;
        }
    return m;
}

double quad(const std::array<Vec3, 3>& s, const Vec3& a, const Vec3& b) {
    double r = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            r += a[k] * s[k][l] * b[l];
    return r;
}

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

Vec3 checked_unit(const Vec3& v) {
    const double n = norm3(v);
    if (std::abs(n - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "direction must be a unit vector, got norm " << n;
        throw InvalidArgument(os.str());
    }
    return {v[0] / n, v[1] / n, v[2] / n};
}

void require_squeezable(const SpinState& psi) {
    if (psi.j().two_j() < 1)
        throw InvalidArgument("squeezing parameter needs j >= 1/2");
}

SqueezingReport report_in_frame(const SpinState& psi, const Moments& m, const PerpFrame& f) {
    SqueezingReport r;
    r.mean_spin = m.mean;
    r.mean_norm = norm3(m.mean);
    r.n1 = f.n1;
    r.n2 = f.n2;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            r.cov[k][l] = m.second[k][l] - m.mean[k] * m.mean[l];

    const double s11 = quad(m.second, f.n1, f.n1);
    const double s22 = quad(m.second, f.n2, f.n2);
    r.A = s11 - s22;
    r.B = 2.0 * quad(m.second, f.n1, f.n2);
    const double rad = std::hypot(r.A, r.B);
    r.xi2 = (s11 + s22 - rad) / psi.j().value();
    if (rad > 0.0) {
        const double half = 0.5 * std::acos(std::clamp(-r.A / rad, -1.0, 1.0));
        r.phi_opt = r.B <= 0.0 ? half : pi - half;
    }
    return r;
}

} // namespace

Vec3 mean_spin(const SpinState& psi) { return moments(psi).mean; }

PerpFrame perp_frame(const Vec3& dir) {
    const double r = norm3(dir);
    if (!(r > 0.0) || !std::isfinite(r))
        throw FrameUndefined("perpendicular frame undefined for a zero or non-finite direction");
    const double rho = std::hypot(dir[0], dir[1]);
    if (rho <= 1e-12 * r) {
        if (dir[2] > 0.0)
            return {{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}};
        return {{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}};  // theta = pi, phi = pi
    }
    const double ct = dir[2] / r, st = rho / r;
    const double cp = dir[0] / rho, sp = dir[1] / rho;
    return {{-sp, cp, 0.0}, {ct * cp, ct * sp, -st}};
}

double variance_cov(const SpinState& psi, const Vec3& a, const Vec3& b) {
    const Vec3 ua = checked_unit(a);
    const Vec3 ub = checked_unit(b);
    const Moments m = moments(psi);
    double c = quad(m.second, ua, ub);
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            c -= ua[k] * m.mean[k] * m.mean[l] * ub[l];
    return c;
}

SqueezingReport squeezing_report(const SpinState& psi) {
    require_squeezable(psi);
    const Moments m = moments(psi);
    const double norm = norm3(m.mean);
    if (!(norm >= 1e-8 * psi.j().value())) {
        std::ostringstream os;
        os << "mean spin |<J>| = " << norm << " is below 1e-8 j; perpendicular frame undefined";
        throw FrameUndefined(os.str());
    }
    return report_in_frame(psi, m, perp_frame(m.mean));
}

SqueezingReport squeezing_report_along(const SpinState& psi, const Vec3& direction) {
    require_squeezable(psi);
    return report_in_frame(psi, moments(psi), perp_frame(direction));
}

double oat_xi_closed(int n, double mu) {
    if (n < 1)
        throw InvalidArgument("N must be at least 1");
    if (n == 1)
        return 1.0;
    auto ipow = [](double x, int k) {
        double r = 1.0;
        for (int i = 0; i < k; ++i)
            r *= x;
        return r;
    };
    const double a = 1.0 - ipow(std::cos(mu), n - 2);
    const double s = std::sin(0.5 * mu);
    const double c = ipow(std::cos(0.5 * mu), n - 2);
    const double b2 = 4.0 * s * s * c * c;
    return 1.0 + 0.5 * (n - 1) * (0.5 * a - std::sqrt(0.25 * a * a + b2));
}

std::vector<double> survival_curve(const SpinState& psi0, const HermitianOperator& h,
                                   const std::vector<double>& times) {
    if (h.dim() != psi0.dim()) {
        std::ostringstream os;
        os << "survival probability: operator dimension " << h.dim()
           << " does not match state dimension " << psi0.dim();
        throw InvalidArgument(os.str());
    }
    const auto eig = hermitian_eigen(h);
    const std::size_t n = eig.values.size();
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex c{};
        for (std::size_t r = 0; r < n; ++r)
            c += std::conj(eig.vectors(r, k)) * psi0[r];
        w[k] = std::norm(c);
    }
    const double p0 = std::norm(braket(psi0.amplitudes(), psi0.amplitudes()));
    std::vector<double> out;
    out.reserve(times.size());
    for (const double t : times) {
        if (t == 0.0) {
            out.push_back(std::min(1.0, p0));
            continue;
        }
        Complex amp{};
        for (std::size_t k = 0; k < n; ++k)
            amp += w[k] * std::polar(1.0, -eig.values[k] * t);
        out.push_back(std::clamp(std::norm(amp), 0.0, 1.0));
    }
    return out;
}

double survival_probability(const SpinState& psi0, const HermitianOperator& h, double t) {
    return survival_curve(psi0, h, {t}).front();
}

} // namespace triaxis
