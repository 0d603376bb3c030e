#include "triaxis/husimi.hpp"

#include "detail/binomial.hpp"
#include "triaxis/error.hpp"
#include "triaxis/format.hpp"
#include "triaxis/kernels.hpp"
#include "triaxis/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <numbers>

namespace triaxis {

namespace {

constexpr double pi = std::numbers::pi;

double prefactor(const SpinState& psi) {
    return static_cast<double>(psi.dim()) / (4.0 * pi);
}

// Coefficients of e^{i n phi} in <theta,phi|psi>.
std::vector<Complex> overlap_coeffs(const SpinState& psi, double theta) {
    const auto b = detail::coherent_magnitudes(psi.j().two_j(), theta);
    std::vector<Complex> c(psi.dim());
    for (std::size_t n = 0; n < psi.dim(); ++n)
        c[n] = b[n] * psi[n];
    return c;
}

} // namespace

GaussLegendre gauss_legendre(int n) {
    if (n < 1)
        throw InvalidArgument("Gauss-Legendre rule needs at least one node");
    // (P_n(x), P_n'(x)) by the three-term recurrence.
    auto legendre = [n](double x) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        return std::pair<double, double>{p1, n * (x * p1 - p0) / (x * x - 1.0)};
    };
    GaussLegendre g;
    g.nodes.resize(static_cast<std::size_t>(n));
    g.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) <= 1e-16)
                break;
        }
        const double dp = legendre(x).second;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto a = static_cast<std::size_t>(i);
        const auto b = static_cast<std::size_t>(n - 1 - i);
        g.nodes[a] = x;
        g.nodes[b] = -x;
        g.weights[a] = w;
        g.weights[b] = w;
    }
    if (n % 2 == 1)
        g.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return g;
}

double q_value(const SpinState& psi, BlochDirection dir) {
    const auto c = overlap_coeffs(psi, dir.theta());
    const double phi = dir.phi();
    double out = 0.0;
    kernels::unit_circle_abs2(c, std::span<const double>(&phi, 1), std::span<double>(&out, 1));
    return prefactor(psi) * out;
}

QGrid q_grid(const SpinState& psi, int n_theta, int n_phi, bool cartesian, unsigned threads) {
    if (n_theta < 2 || n_phi < 2)
        throw InvalidArgument("Husimi grid needs at least 2 theta and 2 phi nodes");
    QGrid g;
    g.n_theta = n_theta;
    g.n_phi = n_phi;
    g.cartesian = cartesian;
    const auto gl = gauss_legendre(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        g.theta_nodes.push_back(std::acos(gl.nodes[static_cast<std::size_t>(i)]));
        g.theta_weights.push_back(gl.weights[static_cast<std::size_t>(i)]);
    }
    for (int k = 0; k < n_phi; ++k)
        g.phi_nodes.push_back(2.0 * pi * k / n_phi);

    const auto np = static_cast<std::size_t>(n_phi);
    g.values.assign(static_cast<std::size_t>(n_theta) * np, 0.0);
    const double pref = prefactor(psi);
    parallel_for(static_cast<std::size_t>(n_theta), threads, [&](std::size_t i) {
        const auto c = overlap_coeffs(psi, g.theta_nodes[i]);
        std::span<double> row(g.values.data() + i * np, np);
        kernels::unit_circle_abs2(c, g.phi_nodes, row);
        for (auto& v : row)
            v *= pref;
    });

    if (cartesian) {
        const std::size_t total = g.values.size();
        g.x.resize(total);
        g.y.resize(total);
        g.z.resize(total);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n_theta); ++i)
            for (std::size_t k = 0; k < np; ++k) {
                const double q = g.values[i * np + k];
                const double th = g.theta_nodes[i], ph = g.phi_nodes[k];
                g.x[i * np + k] = q * std::sin(th) * std::cos(ph);
                g.y[i * np + k] = q * std::sin(th) * std::sin(ph);
                g.z[i * np + k] = q * std::cos(th);
            }
    }
    return g;
}

double q_integral(const QGrid& g) {
    const double wphi = 2.0 * pi / g.n_phi;
    double total = 0.0;
    for (int i = 0; i < g.n_theta; ++i) {
        double row = 0.0;
        for (int k = 0; k < g.n_phi; ++k)
            row += g.at(i, k);
        total += g.theta_weights[static_cast<std::size_t>(i)] * wphi * row;
    }
    return total;
}

double q_normalization(const SpinState& psi) {
    const int tj = psi.j().two_j();
    return q_integral(q_grid(psi, std::max(2, tj + 1), std::max(2, 2 * tj + 2)));
}

void write_q_csv(std::ostream& out, const QGrid& g) {
    out << (g.cartesian ? "theta,phi,Q,x,y,z\n" : "theta,phi,Q\n");
    const auto np = static_cast<std::size_t>(g.n_phi);
    for (std::size_t i = 0; i < static_cast<std::size_t>(g.n_theta); ++i)
        for (std::size_t k = 0; k < np; ++k) {
            const std::size_t idx = i * np + k;
            out << format_double(g.theta_nodes[i]) << ',' << format_double(g.phi_nodes[k]) << ','
                << format_double(g.values[idx]);
            if (g.cartesian)
                out << ',' << format_double(g.x[idx]) << ',' << format_double(g.y[idx]) << ','
                    << format_double(g.z[idx]);
            out << '\n';
        }
}

} // namespace triaxis
