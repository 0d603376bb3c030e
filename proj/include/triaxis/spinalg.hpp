#pragma once

// Dicke-basis spin operators, a dense Hermitian eigensolver, and unitary
// evolution. Basis index n = j + m, ascending in m.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace triaxis {

using Complex = std::complex<double>;

/// Spin quantum number stored as the doubled integer 2j.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    explicit HalfInteger(int two_j);

    /// Parses a decimal half-integer such as 1.5; throws InvalidArgument when
    /// 2j is not a non-negative integer.
    static HalfInteger from_value(double j);

    constexpr int two_j() const noexcept { return two_j_; }
    constexpr double value() const noexcept { return 0.5 * two_j_; }
    constexpr std::size_t dim() const noexcept { return static_cast<std::size_t>(two_j_) + 1; }
    constexpr bool is_integer() const noexcept { return two_j_ % 2 == 0; }

    friend constexpr bool operator==(HalfInteger, HalfInteger) = default;

private:
    int two_j_ = 0;
};

/// Dense square complex matrix, row-major.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t dim);

    static Matrix identity(std::size_t dim);
    static Matrix diagonal(std::span<const double> d);

    std::size_t dim() const noexcept { return dim_; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
    std::span<const Complex> data() const noexcept { return data_; }
    std::span<Complex> data() noexcept { return data_; }

    Matrix adjoint() const;
    double max_abs() const noexcept;
    /// max_r sum_c |a_rc|
    double max_row_sum_norm() const noexcept;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Complex s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= Complex(s, 0.0); }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    /// y = A x
    std::vector<Complex> apply(std::span<const Complex> x) const;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Largest |a_ij - b_ij|.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// A matrix known to be Hermitian. Construction checks the input and then
/// stores an exactly Hermitian copy (lower triangle mirrored from the upper).
class HermitianOperator {
public:
    HermitianOperator() = default;

    /// Throws InvalidArgument naming the worst entry when
    /// |a_ij - conj(a_ji)| exceeds tol * max(1, max|a|).
    explicit HermitianOperator(Matrix m, double tol = 1e-12);

    std::size_t dim() const noexcept { return m_.dim(); }
    const Matrix& matrix() const noexcept { return m_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

private:
    Matrix m_;
};

/// Pure spin-j state in the Dicke basis.
class SpinState {
public:
    SpinState() = default;
    /// Throws InvalidArgument when amplitudes.size() != 2j+1.
    SpinState(HalfInteger j, std::vector<Complex> amplitudes);

    HalfInteger j() const noexcept { return j_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t n) const { return amps_[n]; }
    /// Amplitude of |j,m> given 2m.
    Complex amplitude_at(int two_m) const;

    double norm() const noexcept;
    SpinState normalized() const;

private:
    HalfInteger j_;
    std::vector<Complex> amps_;
};

struct SpinOperators {
    Matrix jx, jy, jz;
    Matrix jplus, jminus;
    Matrix jsq;
};

SpinOperators build_spin_operators(HalfInteger j);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Matrix vectors;              // column k pairs with values[k]
};

/// Householder reduction to real tridiagonal form followed by implicit-shift
/// QL. The largest-magnitude component of each eigenvector is made real and
/// positive.
EigenDecomposition hermitian_eigen(const HermitianOperator& h);

/// Eigenvalues only (ascending); skips the eigenvector accumulation.
std::vector<double> hermitian_eigenvalues(const HermitianOperator& h);

/// exp(-i G t) psi via the eigendecomposition of G.
SpinState evolve(const HermitianOperator& g, double t, const SpinState& psi);
SpinState evolve(const EigenDecomposition& eig, double t, const SpinState& psi);

/// <psi|A|psi>
Complex expectation(const Matrix& a, const SpinState& psi);
/// <a|b>
Complex inner(const SpinState& a, const SpinState& b);

} // namespace triaxis
