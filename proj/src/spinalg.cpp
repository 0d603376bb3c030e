#include "triaxis/spinalg.hpp"

#include "triaxis/error.hpp"
#include "triaxis/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace triaxis {

// ---------------------------------------------------------------- HalfInteger

HalfInteger::HalfInteger(int two_j) : two_j_(two_j) {
    if (two_j < 0)
        throw InvalidArgument("spin 2j must be non-negative, got " + std::to_string(two_j));
}

HalfInteger HalfInteger::from_value(double j) {
    const double twice = 2.0 * j;
    const double rounded = std::round(twice);
    if (!std::isfinite(j) || j < 0.0 || std::abs(twice - rounded) > 1e-9 || rounded > 1e7) {
        std::ostringstream os;
        os << "j must be a non-negative half-integer, got " << j;
        throw InvalidArgument(os.str());
    }
    return HalfInteger(static_cast<int>(rounded));
}

// --------------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c)
            out(c, r) = std::conj((*this)(r, c));
    return out;
}

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : data_)
        m = std::max(m, std::abs(v));
    return m;
}

double Matrix::max_row_sum_norm() const noexcept {
    double best = 0.0;
    for (std::size_t r = 0; r < dim_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < dim_; ++c)
            s += std::abs((*this)(r, c));
        best = std::max(best, s);
    }
    return best;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    if (o.dim_ != dim_)
        throw InvalidArgument("matrix dimension mismatch in addition");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (o.dim_ != dim_)
        throw InvalidArgument("matrix dimension mismatch in subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& v : data_)
        v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim())
        throw InvalidArgument("matrix dimension mismatch in product");
    const std::size_t n = a.dim();
    Matrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex{})
                continue;
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += ark * b(k, c);
        }
    return out;
}

std::vector<Complex> Matrix::apply(std::span<const Complex> x) const {
    if (x.size() != dim_)
        throw InvalidArgument("matrix-vector dimension mismatch");
    std::vector<Complex> y(dim_);
    kernels::matvec(data_, dim_, x, y);
    return y;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim())
        throw InvalidArgument("matrix dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

// ---------------------------------------------------------- HermitianOperator

HermitianOperator::HermitianOperator(Matrix m, double tol) : m_(std::move(m)) {
    const std::size_t n = m_.dim();
    const double scale = std::max(1.0, m_.max_abs());
    double worst = 0.0;
    std::size_t wr = 0, wc = 0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
            const double d = std::abs(m_(r, c) - std::conj(m_(c, r)));
            if (d > worst) {
                worst = d;
                wr = r;
                wc = c;
            }
        }
    if (worst > tol * scale) {
        std::ostringstream os;
        os << "matrix is not Hermitian: |a(" << wr << "," << wc << ") - conj(a(" << wc << ","
           << wr << "))| = " << worst << " exceeds " << tol * scale;
        throw InvalidArgument(os.str());
    }
    for (std::size_t r = 0; r < n; ++r) {
        m_(r, r) = Complex(m_(r, r).real(), 0.0);
        for (std::size_t c = r + 1; c < n; ++c)
            m_(c, r) = std::conj(m_(r, c));
    }
}

// ------------------------------------------------------------------ SpinState

SpinState::SpinState(HalfInteger j, std::vector<Complex> amplitudes)
    : j_(j), amps_(std::move(amplitudes)) {
    if (amps_.size() != j_.dim()) {
        std::ostringstream os;
        os << "spin-" << j_.value() << " state needs " << j_.dim() << " amplitudes, got "
           << amps_.size();
        throw InvalidArgument(os.str());
    }
}

Complex SpinState::amplitude_at(int two_m) const {
    const int two_n = j_.two_j() + two_m;
    if (two_m < -j_.two_j() || two_m > j_.two_j() || two_n % 2 != 0)
        throw InvalidArgument("m = " + std::to_string(two_m) + "/2 is not a level of spin " +
                              std::to_string(j_.two_j()) + "/2");
    return amps_[static_cast<std::size_t>(two_n / 2)];
}

double SpinState::norm() const noexcept {
    double s = 0.0;
    for (const auto& a : amps_)
        s += std::norm(a);
    return std::sqrt(s);
}

SpinState SpinState::normalized() const {
    const double n = norm();
    if (n == 0.0)
        throw InvalidArgument("cannot normalize the zero vector");
    std::vector<Complex> out(amps_);
    for (auto& a : out)
        a /= n;
    return {j_, std::move(out)};
}

// -------------------------------------------------------------- spin operators

SpinOperators build_spin_operators(HalfInteger j) {
    const std::size_t d = j.dim();
    const long tj = j.two_j();
    SpinOperators ops{Matrix(d), Matrix(d), Matrix(d), Matrix(d), Matrix(d), Matrix(d)};
    for (std::size_t n = 0; n < d; ++n) {
        const long tm = -tj + 2 * static_cast<long>(n);
        ops.jz(n, n) = 0.5 * static_cast<double>(tm);
        ops.jsq(n, n) = 0.25 * static_cast<double>(tj * (tj + 2));
        if (n + 1 < d) {
            // <j,m+1|J+|j,m> = sqrt(j(j+1) - m(m+1)), exact in quarter units.
            const double four_x = static_cast<double>(tj * (tj + 2) - tm * (tm + 2));
            ops.jplus(n + 1, n) = 0.5 * std::sqrt(four_x);
        }
    }
    ops.jminus = ops.jplus.adjoint();
    ops.jx = 0.5 * (ops.jplus + ops.jminus);
    ops.jy = Complex(0.0, -0.5) * (ops.jplus - ops.jminus);
    return ops;
}

// ---------------------------------------------------------------- eigensolver

namespace {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<Complex> sub;  // sub[k] couples k and k+1
    Matrix q;                  // accumulated reflections (empty when not requested)
};

// Householder reduction A = Q T Q^H with T Hermitian tridiagonal.
Tridiagonal householder_tridiagonalize(const Matrix& input, bool want_q) {
    const std::size_t n = input.dim();
    Matrix a = input;
    Tridiagonal out;
    out.diag.resize(n);
    out.sub.assign(n > 0 ? n - 1 : 0, Complex{});
    if (want_q)
        out.q = Matrix::identity(n);

    std::vector<Complex> u, p;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        u.assign(m, Complex{});
        double tail2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = a(k + 1 + i, k);
            if (i > 0)
                tail2 += std::norm(u[i]);
        }
        if (tail2 == 0.0) {
            out.sub[k] = u[0];
            continue;
        }
        const double x0abs = std::abs(u[0]);
        const double xnorm = std::sqrt(tail2 + x0abs * x0abs);
        const Complex phase = x0abs > 0.0 ? u[0] / x0abs : Complex(1.0, 0.0);
        const Complex alpha = -phase * xnorm;
        u[0] -= alpha;
        const double tau = 1.0 / (xnorm * xnorm + xnorm * x0abs);  // 2 / |u|^2

        // p = tau * B u over the trailing block B = a[k+1.., k+1..]
        p.assign(m, Complex{});
        for (std::size_t r = 0; r < m; ++r) {
            Complex s{};
            for (std::size_t c = 0; c < m; ++c)
                s += a(k + 1 + r, k + 1 + c) * u[c];
            p[r] = tau * s;
        }
        Complex upk{};
        for (std::size_t i = 0; i < m; ++i)
            upk += std::conj(u[i]) * p[i];
        const double kk = 0.5 * tau * upk.real();
        for (std::size_t i = 0; i < m; ++i)
            p[i] -= kk * u[i];  // p is now w
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < m; ++c)
                a(k + 1 + r, k + 1 + c) -= u[r] * std::conj(p[c]) + p[r] * std::conj(u[c]);

        out.sub[k] = alpha;
        for (std::size_t i = 0; i < m; ++i) {
            a(k + 1 + i, k) = i == 0 ? alpha : Complex{};
            a(k, k + 1 + i) = std::conj(a(k + 1 + i, k));
        }

        if (want_q) {
            // Q <- Q (I - tau u u^H), acting on columns k+1..n-1
            for (std::size_t r = 0; r < n; ++r) {
                Complex s{};
                for (std::size_t i = 0; i < m; ++i)
                    s += out.q(r, k + 1 + i) * u[i];
                s *= tau;
                for (std::size_t i = 0; i < m; ++i)
                    out.q(r, k + 1 + i) -= s * std::conj(u[i]);
            }
        }
    }
    if (n >= 2)
        out.sub[n - 2] = a(n - 1, n - 2);
    for (std::size_t i = 0; i < n; ++i)
        out.diag[i] = a(i, i).real();
    return out;
}

// Implicit-shift QL on a real symmetric tridiagonal matrix. e[i] couples i and
// i+1; z (row-major n x n) accumulates the rotations when non-null.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* z) {
    const std::size_t n = d.size();
    if (n == 0)
        return;
    e.resize(n, 0.0);
    e[n - 1] = 0.0;
    constexpr double eps = std::numeric_limits<double>::epsilon();
    constexpr int max_iter = 60;

    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        for (;;) {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd)
                    break;
            }
            if (m == l)
                break;
            if (++iter > max_iter) {
                std::ostringstream os;
                os << "tridiagonal QL failed to converge for eigenvalue " << l << " after "
                   << max_iter << " iterations (residual " << std::abs(e[l]) << ")";
                throw NumericalError(os.str());
            }
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0, c = 1.0, p = 0.0;
            bool underflow = false;
            for (std::size_t i = m; i-- > l;) {
                double f = s * e[i];
                const double b = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if (z != nullptr) {
                    auto& zz = *z;
                    for (std::size_t k = 0; k < n; ++k) {
                        f = zz[k * n + i + 1];
                        zz[k * n + i + 1] = s * zz[k * n + i] + c * f;
                        zz[k * n + i] = c * zz[k * n + i] - s * f;
                    }
                }
            }
            if (underflow)
                continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

void fix_phase(Matrix& v, std::size_t col) {
    const std::size_t n = v.dim();
    double best = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        best = std::max(best, std::abs(v(r, col)));
    if (best == 0.0)
        return;
    // First component within rounding of the maximum, so near-ties resolve by index.
    std::size_t pick = 0;
    for (std::size_t r = 0; r < n; ++r)
        if (std::abs(v(r, col)) >= best * (1.0 - 1e-10)) {
            pick = r;
            break;
        }
    const Complex ph = std::conj(v(pick, col)) / std::abs(v(pick, col));
    for (std::size_t r = 0; r < n; ++r)
        v(r, col) *= ph;
    v(pick, col) = Complex(std::abs(v(pick, col)), 0.0);
}

} // namespace

std::vector<double> hermitian_eigenvalues(const HermitianOperator& h) {
    auto tri = householder_tridiagonalize(h.matrix(), false);
    std::vector<double> e(tri.sub.size());
    for (std::size_t k = 0; k < e.size(); ++k)
        e[k] = std::abs(tri.sub[k]);
    tridiagonal_ql(tri.diag, e, nullptr);
    std::sort(tri.diag.begin(), tri.diag.end());
    return tri.diag;
}

EigenDecomposition hermitian_eigen(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    auto tri = householder_tridiagonalize(h.matrix(), true);

    // Diagonal unitary D making the subdiagonal real: T = D T_r D^H.
    std::vector<Complex> phase(n, Complex(1.0, 0.0));
    std::vector<double> e(tri.sub.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double mag = std::abs(tri.sub[k]);
        e[k] = mag;
        phase[k + 1] = mag > 0.0 ? phase[k] * (tri.sub[k] / mag) : phase[k];
    }

    std::vector<double> z(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        z[i * n + i] = 1.0;
    std::vector<double> d = tri.diag;
    tridiagonal_ql(d, e, &z);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n);
    // V = Q D Z
    Matrix qd = tri.q;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t k = 0; k < n; ++k)
            qd(r, k) *= phase[k];
    for (std::size_t c = 0; c < n; ++c) {
        const std::size_t src = order[c];
        out.values[c] = d[src];
        for (std::size_t r = 0; r < n; ++r) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k)
                s += qd(r, k) * z[k * n + src];
            out.vectors(r, c) = s;
        }
        fix_phase(out.vectors, c);
    }
    return out;
}

// ------------------------------------------------------------------ evolution

SpinState evolve(const EigenDecomposition& eig, double t, const SpinState& psi) {
    const std::size_t n = eig.values.size();
    if (n != psi.dim()) {
        std::ostringstream os;
        os << "evolve: generator dimension " << n << " does not match state dimension "
           << psi.dim();
        throw InvalidArgument(os.str());
    }
    if (t == 0.0)
        return psi;
    const Matrix vh = eig.vectors.adjoint();
    std::vector<Complex> c(n);
    kernels::matvec(vh.data(), n, psi.amplitudes(), c);
    for (std::size_t k = 0; k < n; ++k)
        c[k] *= std::polar(1.0, -eig.values[k] * t);
    std::vector<Complex> out(n);
    kernels::matvec(eig.vectors.data(), n, c, out);
    return {psi.j(), std::move(out)};
}

SpinState evolve(const HermitianOperator& g, double t, const SpinState& psi) {
    if (g.dim() != psi.dim()) {
        std::ostringstream os;
        os << "evolve: generator dimension " << g.dim() << " does not match state dimension "
           << psi.dim();
        throw InvalidArgument(os.str());
    }
    if (t == 0.0)
        return psi;
    return evolve(hermitian_eigen(g), t, psi);
}

Complex expectation(const Matrix& a, const SpinState& psi) {
    if (a.dim() != psi.dim())
        throw InvalidArgument("expectation: operator and state dimensions differ");
    std::vector<Complex> y(psi.dim());
    kernels::matvec(a.data(), a.dim(), psi.amplitudes(), y);
    return kernels::dot(psi.amplitudes(), y);
}

Complex inner(const SpinState& a, const SpinState& b) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << "inner product of states with dimensions " << a.dim() << " and " << b.dim();
        throw InvalidArgument(os.str());
    }
    return kernels::dot(a.amplitudes(), b.amplitudes());
}

} // namespace triaxis
