#include "triaxis/majorana.hpp"

#include "detail/binomial.hpp"
#include "triaxis/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace triaxis {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_iterations = 200;
constexpr double residual_contract = 1e-10;

double normalized_arg(Complex z) {
    if (z == Complex{})
        return 0.0;
    double a = std::arg(z);
    if (a < 0.0)
        a += 2.0 * pi;
    return a >= 2.0 * pi ? 0.0 : a;
}

struct Evaluation {
    Complex ratio;    // p / p'
    double residual;  // |p(z)| / max(1,|z|)^deg
    double noise;     // rounding bound on the same scale
};

// For |z| > 1 the reversed polynomial q(y) = y^N p(1/y) is evaluated at
// y = 1/z, which keeps Horner's recurrence bounded; p/p' = z / (N - y q'/q).
Evaluation evaluate(std::span<const Complex> a, Complex z) {
    const std::size_t n = a.size() - 1;
    Complex p{}, dp{};
    double bound = 0.0;
    if (std::abs(z) <= 1.0) {
        const double az = std::abs(z);
        for (std::size_t k = n + 1; k-- > 0;) {
            dp = dp * z + p;
            p = p * z + a[k];
            bound = bound * az + std::abs(a[k]);
        }
        Evaluation e{};
        e.residual = std::abs(p);
        e.noise = 4.0 * eps * (2.0 * static_cast<double>(n) + 1.0) * bound;
        e.ratio = dp == Complex{} ? Complex{} : p / dp;
        return e;
    }
    const Complex y = 1.0 / z;
    const double ay = std::abs(y);
    for (std::size_t k = 0; k <= n; ++k) {
        dp = dp * y + p;
        p = p * y + a[k];
        bound = bound * ay + std::abs(a[k]);
    }
    Evaluation e{};
    e.residual = std::abs(p);
    e.noise = 4.0 * eps * (2.0 * static_cast<double>(n) + 1.0) * bound;
    if (p == Complex{}) {
        e.ratio = Complex{};
    } else {
        const Complex denom = static_cast<double>(n) - y * dp / p;
        e.ratio = denom == Complex{} ? Complex{} : z / denom;
    }
    return e;
}

// Starting points on the circles given by the upper convex hull of
// (k, log|a_k|), one circle per hull edge with as many points as the edge spans.
std::vector<Complex> newton_polygon_guesses(std::span<const Complex> a) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<std::pair<int, double>> hull;
    for (int k = 0; k <= n; ++k) {
        const double m = std::abs(a[static_cast<std::size_t>(k)]);
        if (m == 0.0)
            continue;
        const std::pair<int, double> pt{k, std::log(m)};
        while (hull.size() >= 2) {
            const auto& p0 = hull[hull.size() - 2];
            const auto& p1 = hull.back();
            const double cross = (p1.first - p0.first) * (pt.second - p0.second) -
                                 (p1.second - p0.second) * (pt.first - p0.first);
            if (cross < 0.0)
                break;
            hull.pop_back();
        }
        hull.push_back(pt);
    }
    constexpr double sigma = 0.7;
    std::vector<Complex> z;
    z.reserve(static_cast<std::size_t>(n));
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        const int k0 = hull[h].first, k1 = hull[h + 1].first;
        const int m = k1 - k0;
        const double r = std::exp((hull[h].second - hull[h + 1].second) / m);
        for (int q = 0; q < m; ++q) {
            const double ang = 2.0 * pi * q / m + 2.0 * pi * k0 / n + sigma;
            z.push_back(std::polar(r, ang));
        }
    }
    return z;
}

// Taylor coefficients of p about c up to order m-1 are all at rounding level,
// i.e. c is numerically an m-fold root.
bool is_multiple_root(std::span<const Complex> a, Complex c, int m) {
    const int n = static_cast<int>(a.size()) - 1;
    const double ac = std::abs(c);
    const double tol = 64.0 * (n + 1) * eps;
    for (int k = 0; k < m; ++k) {
        Complex b{};
        double bound = 0.0;
        double binom = 1.0;  // C(i, k) for i = k..n
        Complex zpow = 1.0;
        double apow = 1.0;
        for (int i = k; i <= n; ++i) {
            b += a[static_cast<std::size_t>(i)] * binom * zpow;
            bound += std::abs(a[static_cast<std::size_t>(i)]) * binom * apow;
            binom = binom * (i + 1) / (i + 1 - k);
            zpow *= c;
            apow *= ac;
        }
        if (std::abs(b) > tol * bound)
            return false;
    }
    return true;
}

// The (m-1)th derivative of p, scaled by 1/(m-1)!, has a simple root at an
// m-fold root of p. Newton on it from the cluster centroid.
Complex refine_multiple(std::span<const Complex> a, Complex c, int m) {
    const int n = static_cast<int>(a.size()) - 1;
    std::vector<Complex> d(static_cast<std::size_t>(n - m + 2));
    double binom = 1.0;  // C(k + m - 1, m - 1)
    for (int k = 0; k + m - 1 <= n; ++k) {
        d[static_cast<std::size_t>(k)] = binom * a[static_cast<std::size_t>(k + m - 1)];
        binom = binom * (k + m) / (k + 1);
    }
    for (int it = 0; it < 50; ++it) {
        Complex p{}, dp{};
        for (std::size_t k = d.size(); k-- > 0;) {
            dp = dp * c + p;
            p = p * c + d[k];
        }
        if (dp == Complex{})
            break;
        const Complex step = p / dp;
        c -= step;
        if (std::abs(step) <= 4.0 * eps * std::max(1.0, std::abs(c)))
            break;
    }
    return c;
}

// Aberth converges only linearly onto an m-fold root and stalls at a spread of
// about eps^(1/m). Clusters found by single linkage at growing radii are
// replaced by the refined centre when the Taylor test confirms the multiplicity.
void polish_clusters(std::span<const Complex> a, std::vector<Complex>& z) {
    const std::size_t n = z.size();
    std::vector<bool> done(n, false);
    for (const double radius : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 3e-2, 1e-1, 3e-1}) {
        std::vector<std::size_t> parent(n);
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        auto find = [&](std::size_t i) {
            while (parent[i] != i)
                i = parent[i] = parent[parent[i]];
            return i;
        };
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k)
                if (!done[i] && !done[k] &&
                    std::abs(z[i] - z[k]) <= radius * std::max(1.0, std::abs(z[i])))
                    parent[find(i)] = find(k);
        std::vector<std::vector<std::size_t>> groups(n);
        for (std::size_t i = 0; i < n; ++i)
            if (!done[i])
                groups[find(i)].push_back(i);
        for (const auto& g : groups) {
            if (g.size() < 2)
                continue;
            Complex c{};
            for (const auto i : g)
                c += z[i];
            c /= static_cast<double>(g.size());
            c = refine_multiple(a, c, static_cast<int>(g.size()));
            if (!is_multiple_root(a, c, static_cast<int>(g.size())))
                continue;
            for (const auto i : g) {
                z[i] = c;
                done[i] = true;
            }
        }
    }
}

void sort_roots(std::vector<Complex>& z) {
    std::sort(z.begin(), z.end(), [](Complex x, Complex y) {
        const double ax = std::abs(x), ay = std::abs(y);
        if (ax != ay)
            return ax < ay;
        return normalized_arg(x) < normalized_arg(y);
    });
    // Magnitudes equal up to rounding are ordered by argument.
    std::size_t start = 0;
    while (start < z.size()) {
        std::size_t end = start + 1;
        const double ref = std::abs(z[start]);
        while (end < z.size() && std::abs(z[end]) - ref <= 1e-9 * std::max(1.0, ref))
            ++end;
        std::sort(z.begin() + static_cast<std::ptrdiff_t>(start),
                  z.begin() + static_cast<std::ptrdiff_t>(end),
                  [](Complex x, Complex y) { return normalized_arg(x) < normalized_arg(y); });
        start = end;
    }
}

double scaled_residual(std::span<const Complex> a, Complex z, double amax) {
    return evaluate(a, z).residual / amax;
}

} // namespace

Complex polyval(std::span<const Complex> coeffs, Complex z) {
    Complex p{};
    for (std::size_t k = coeffs.size(); k-- > 0;)
        p = p * z + coeffs[k];
    return p;
}

RootResult polynomial_roots(std::span<const Complex> a) {
    if (a.empty() || a.back() == Complex{})
        throw InvalidArgument("polynomial_roots needs a nonzero leading coefficient");
    const std::size_t n = a.size() - 1;
    RootResult out;
    if (n == 0)
        return out;
    double amax = 0.0;
    for (const auto& c : a)
        amax = std::max(amax, std::abs(c));

    // Exact zero roots from vanishing low-order coefficients.
    std::size_t low = 0;
    while (a[low] == Complex{})
        ++low;
    const auto core = a.subspan(low);
    const std::size_t m = core.size() - 1;

    std::vector<Complex> z;
    if (m == 1) {
        z.push_back(-core[0] / core[1]);
    } else if (m > 1) {
        z = newton_polygon_guesses(core);
        std::vector<bool> converged(m, false);
        int iter = 0;
        std::size_t remaining = m;
        for (; iter < max_iterations && remaining > 0; ++iter) {
            for (std::size_t i = 0; i < m; ++i) {
                if (converged[i])
                    continue;
                const Evaluation e = evaluate(core, z[i]);
                if (e.residual <= e.noise) {
                    converged[i] = true;
                    --remaining;
                    continue;
                }
                Complex s{};
                for (std::size_t k = 0; k < m; ++k)
                    if (k != i && z[k] != z[i])
                        s += 1.0 / (z[i] - z[k]);
                const Complex w = e.ratio / (1.0 - e.ratio * s);
                z[i] -= w;
                if (std::abs(w) < 1e-13 * (1.0 + std::abs(z[i]))) {
                    converged[i] = true;
                    --remaining;
                }
            }
        }
        out.iterations = iter;
        polish_clusters(core, z);
    }
    z.insert(z.begin(), low, Complex{});

    double worst = 0.0;
    for (const auto& r : z)
        worst = std::max(worst, scaled_residual(a, r, amax));
    if (!(worst <= residual_contract)) {
        std::ostringstream os;
        os << "root finder did not converge within " << max_iterations
           << " iterations; worst scaled residual " << worst;
        throw NumericalError(os.str());
    }
    sort_roots(z);
    out.roots = std::move(z);
    out.max_residual = worst;
    return out;
}

MajoranaPolynomial polynomial_from_state(const SpinState& psi) {
    const int n2j = psi.j().two_j();
    const auto sb = detail::sqrt_binomials(n2j);
    MajoranaPolynomial p{psi.j(), std::vector<Complex>(psi.dim())};
    for (int n = 0; n <= n2j; ++n) {
        const auto k = static_cast<std::size_t>(n);
        p.coeffs[k] = (n % 2 == 0 ? 1.0 : -1.0) * sb[k] * psi[k];
    }
    return p;
}

SpinState state_from_polynomial(const MajoranaPolynomial& p) {
    if (p.coeffs.size() != p.j.dim())
        throw InvalidArgument("Majorana polynomial needs 2j+1 coefficients");
    const int n2j = p.j.two_j();
    const auto sb = detail::sqrt_binomials(n2j);
    std::vector<Complex> amps(p.j.dim());
    for (int n = 0; n <= n2j; ++n) {
        const auto k = static_cast<std::size_t>(n);
        amps[k] = (n % 2 == 0 ? 1.0 : -1.0) * p.coeffs[k] / sb[k];
    }
    return {p.j, std::move(amps)};
}

MajoranaPolynomial oat_normalized_polynomial(int n, double mu) {
    if (n < 1 || n > 1000)
        throw InvalidArgument("N must lie in [1, 1000], got " + std::to_string(n));
    if (!std::isfinite(mu))
        throw InvalidArgument("twist mu must be finite");
    MajoranaPolynomial p{HalfInteger(n), std::vector<Complex>(static_cast<std::size_t>(n) + 1)};
    double binom = 1.0;
    for (int k = 0; k <= n; ++k) {
        const double e = 0.5 * mu * static_cast<double>(k) * static_cast<double>(n - k);
        p.coeffs[static_cast<std::size_t>(k)] = (k % 2 == 0 ? binom : -binom) * std::polar(1.0, e);
        binom = binom * (n - k) / (k + 1);
    }
    return p;
}

Constellation find_roots(const MajoranaPolynomial& p) {
    if (p.coeffs.size() != p.j.dim())
        throw InvalidArgument("Majorana polynomial needs 2j+1 coefficients");
    double amax = 0.0;
    for (const auto& c : p.coeffs)
        amax = std::max(amax, std::abs(c));
    if (amax == 0.0)
        throw InvalidArgument("the zero polynomial has no constellation");
    std::size_t deg = p.coeffs.size() - 1;
    while (std::abs(p.coeffs[deg]) <= 1e-12 * amax)
        --deg;

    Constellation c;
    c.j = p.j;
    c.infinity_count = p.j.two_j() - static_cast<int>(deg);
    const auto res = polynomial_roots(std::span<const Complex>(p.coeffs).first(deg + 1));
    c.finite_roots = res.roots;
    c.max_residual = res.max_residual;
    return c;
}

BlochDirection star_direction(Complex z) {
    return {2.0 * std::atan2(1.0, std::abs(z)), normalized_arg(z)};
}

Constellation to_sphere(Constellation c) {
    c.sphere_points.clear();
    for (const auto& z : c.finite_roots)
        c.sphere_points.push_back(star_direction(z));
    for (int i = 0; i < c.infinity_count; ++i)
        c.sphere_points.emplace_back(0.0, 0.0);
    return c;
}

} // namespace triaxis
