#pragma once

// Data-parallel inner loops shared by the spin-algebra and phase-space code.
//
// Every kernel has a portable scalar reference implementation and, on x86-64
// builds with TRIAXIS_HAVE_AVX2, an AVX2/FMA variant. The top-level entry
// points dispatch once, at first use, based on what the running CPU reports.
// The variants are required to agree to rounding (see tests/test_kernels.cpp).

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace triaxis::kernels {

using Complex = std::complex<double>;

enum class Backend { scalar, avx2 };

/// Backend chosen for this process.
Backend active_backend() noexcept;
std::string_view backend_name(Backend b) noexcept;

/// True when the AVX2 variant was compiled in and the CPU supports AVX2+FMA.
bool avx2_available() noexcept;

/// y = A x for a row-major n x n complex matrix.
void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y);

/// sum_i conj(a_i) b_i
Complex dot(std::span<const Complex> a, std::span<const Complex> b);

/// out[k] = | sum_n coeffs[n] * exp(i n phis[k]) |^2
void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out);

namespace scalar {
void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y);
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out);
} // namespace scalar

#if defined(TRIAXIS_HAVE_AVX2)
namespace avx2 {
void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y);
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out);
} // namespace avx2
#endif

} // namespace triaxis::kernels
