#pragma once

// Test-side reference computations. Nothing here calls the eigensolver, the
// squeezing code or the root finder, so agreement with the library is a real
// cross-check rather than a tautology.

#include "triaxis/spinalg.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using triaxis::Complex;
using CMat = std::vector<std::vector<Complex>>;
using CVec = std::vector<Complex>;

inline CMat zeros(std::size_t n) { return CMat(n, CVec(n, Complex{})); }

inline CMat mul(const CMat& a, const CMat& b) {
    const std::size_t n = a.size();
    CMat c = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline CVec apply(const CMat& a, const CVec& x) {
    CVec y(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < x.size(); ++k)
            y[i] += a[i][k] * x[k];
    return y;
}

inline CMat add(const CMat& a, const CMat& b, Complex sb = 1.0) {
    CMat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            c[i][j] += sb * b[i][j];
    return c;
}

inline CMat from(const triaxis::Matrix& m) {
    CMat c = zeros(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            c[i][j] = m(i, j);
    return c;
}

struct Spin {
    CMat jx, jy, jz, jp, jm;
};

// Ladder operators written out from <m+1|J+|m> = sqrt(j(j+1) - m(m+1)).
inline Spin spin(int two_j) {
    const std::size_t n = static_cast<std::size_t>(two_j) + 1;
    const double j = 0.5 * two_j;
    Spin s{zeros(n), zeros(n), zeros(n), zeros(n), zeros(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double m = -j + static_cast<double>(k);
        s.jz[k][k] = m;
        if (k + 1 < n) {
            const double v = std::sqrt(j * (j + 1) - m * (m + 1));
            s.jp[k + 1][k] = v;
            s.jm[k][k + 1] = v;
        }
    }
    const Complex half_i(0.0, 0.5);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            s.jx[a][b] = 0.5 * (s.jp[a][b] + s.jm[a][b]);
            s.jy[a][b] = -half_i * (s.jp[a][b] - s.jm[a][b]);
        }
    return s;
}

inline double max_row_sum(const CMat& a) {
    double best = 0.0;
    for (const auto& row : a) {
        double s = 0.0;
        for (const auto& v : row)
            s += std::abs(v);
        best = std::max(best, s);
    }
    return best;
}

// exp(-i G t) x by Taylor series on substeps with |G dt| <= 1/4.
inline CVec expm_apply(const CMat& g, double t, CVec x) {
    const double norm = max_row_sum(g) * std::abs(t);
    const int steps = std::max(1, static_cast<int>(std::ceil(norm / 0.25)));
    const double dt = t / steps;
    for (int s = 0; s < steps; ++s) {
        CVec term = x, acc = x;
        for (int k = 1; k < 40; ++k) {
            term = oracle::apply(g, term);
            for (auto& v : term)
                v *= Complex(0.0, -dt) / static_cast<double>(k);
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += term[i];
        }
        x = acc;
    }
    return x;
}

inline Complex expect(const CMat& a, const CVec& psi) {
    const CVec ap = oracle::apply(a, psi);
    Complex s{};
    for (std::size_t i = 0; i < psi.size(); ++i)
        s += std::conj(psi[i]) * ap[i];
    return s;
}

inline CVec vec(const triaxis::SpinState& s) {
    return CVec(s.amplitudes().begin(), s.amplitudes().end());
}

// Squeezing parameter from scratch: covariance matrix of (Jx, Jy, Jz), a
// Gram-Schmidt frame perpendicular to the mean spin, and the smaller
// eigenvalue of the 2x2 block in that frame. Returns NaN at zero mean spin.
inline double xi2(const CVec& psi, int two_j) {
    const Spin s = spin(two_j);
    const CMat* ops[3] = {&s.jx, &s.jy, &s.jz};
    double mean[3], cov[3][3];
    for (int a = 0; a < 3; ++a)
        mean[a] = expect(*ops[a], psi).real();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const CMat ab = mul(*ops[a], *ops[b]);
            cov[a][b] = expect(ab, psi).real() - mean[a] * mean[b];
        }
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            cov[a][b] = cov[b][a] = 0.5 * (cov[a][b] + cov[b][a]);
    const double r = std::sqrt(mean[0] * mean[0] + mean[1] * mean[1] + mean[2] * mean[2]);
    if (r < 1e-9)
        return std::nan("");
    const double u[3] = {mean[0] / r, mean[1] / r, mean[2] / r};
    // Pick the coordinate axis least aligned with u as the seed.
    int seed = 0;
    for (int a = 1; a < 3; ++a)
        if (std::abs(u[a]) < std::abs(u[seed]))
            seed = a;
    double e1[3] = {0, 0, 0};
    e1[seed] = 1.0;
    const double d = u[seed];
    double nn = 0.0;
    for (int a = 0; a < 3; ++a) {
        e1[a] -= d * u[a];
        nn += e1[a] * e1[a];
    }
    for (auto& v : e1)
        v /= std::sqrt(nn);
    const double e2[3] = {u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
                          u[0] * e1[1] - u[1] * e1[0]};
    auto q = [&](const double* x, const double* y) {
        double s2 = 0.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                s2 += x[a] * cov[a][b] * y[b];
        return s2;
    };
    const double p = q(e1, e1), w = q(e2, e2), c = q(e1, e2);
    const double lmin = 0.5 * (p + w) - std::sqrt(0.25 * (p - w) * (p - w) + c * c);
    return lmin / (0.25 * two_j);
}

inline double bisect(const std::function<double(double)>& f, double a, double b) {
    double fa = f(a);
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// Golden-section minimum of a unimodal f on [a, b].
inline double golden_min(const std::function<double(double)>& f, double a, double b) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

inline triaxis::SpinState random_state(int two_j, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(static_cast<std::size_t>(two_j) + 1);
    double n = 0.0;
    for (auto& v : a) {
        v = {g(rng), g(rng)};
        n += std::norm(v);
    }
    for (auto& v : a)
        v /= std::sqrt(n);
    return triaxis::SpinState(triaxis::HalfInteger(two_j), a);
}

inline triaxis::HermitianOperator random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    triaxis::Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = g(rng);
        for (std::size_t k = i + 1; k < n; ++k) {
            m(i, k) = {g(rng), g(rng)};
            m(k, i) = std::conj(m(i, k));
        }
    }
    return triaxis::HermitianOperator(m);
}

} // namespace oracle
