// AVX2/FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless avx2_available() is true.

#include "triaxis/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace triaxis::kernels::avx2 {

namespace {

// Two interleaved complex numbers per register: [re0, im0, re1, im1].
inline __m256d load2(const Complex* p) {
    return _mm256_loadu_pd(reinterpret_cast<const double*>(p));
}

inline Complex hsum2(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    alignas(16) double out[2];
    _mm_store_pd(out, s);
    return {out[0], out[1]};
}

// a * b for packed complex pairs.
inline __m256d cmul(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0b1111);
    const __m256d b_sw = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

// conj(a) * b for packed complex pairs.
inline __m256d cmul_conj(__m256d a, __m256d b) {
    const __m256d a_re = _mm256_movedup_pd(a);
    const __m256d a_im = _mm256_permute_pd(a, 0b1111);
    const __m256d b_sw = _mm256_permute_pd(b, 0b0101);
    return _mm256_fmsubadd_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

} // namespace

void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y) {
    const std::size_t pairs = n / 2;
    for (std::size_t r = 0; r < n; ++r) {
        const Complex* row = a.data() + r * n;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        std::size_t p = 0;
        for (; p + 1 < pairs; p += 2) {
            acc0 = _mm256_add_pd(acc0, cmul(load2(row + 2 * p), load2(x.data() + 2 * p)));
            acc1 = _mm256_add_pd(acc1, cmul(load2(row + 2 * p + 2), load2(x.data() + 2 * p + 2)));
        }
        for (; p < pairs; ++p)
            acc0 = _mm256_add_pd(acc0, cmul(load2(row + 2 * p), load2(x.data() + 2 * p)));
        Complex sum = hsum2(_mm256_add_pd(acc0, acc1));
        if (n % 2 != 0)
            sum += row[n - 1] * x[n - 1];
        y[r] = sum;
    }
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    const std::size_t n = a.size();
    const std::size_t pairs = n / 2;
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t p = 0; p < pairs; ++p)
        acc = _mm256_add_pd(acc, cmul_conj(load2(a.data() + 2 * p), load2(b.data() + 2 * p)));
    Complex sum = hsum2(acc);
    if (n % 2 != 0)
        sum += std::conj(a[n - 1]) * b[n - 1];
    return sum;
}

void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out) {
    const std::size_t m = phis.size();
    if (coeffs.empty()) {
        for (std::size_t k = 0; k < m; ++k)
            out[k] = 0.0;
        return;
    }
    const std::size_t deg = coeffs.size() - 1;

    // Four evaluation points per lane group, real and imaginary parts split.
    std::size_t k = 0;
    for (; k + 4 <= m; k += 4) {
        alignas(32) double wr[4], wi[4];
        for (int l = 0; l < 4; ++l) {
            wr[l] = std::cos(phis[k + l]);
            wi[l] = std::sin(phis[k + l]);
        }
        const __m256d vwr = _mm256_load_pd(wr);
        const __m256d vwi = _mm256_load_pd(wi);
        __m256d accr = _mm256_setzero_pd();
        __m256d acci = _mm256_setzero_pd();
        for (std::size_t i = 0; i <= deg; ++i) {
            const Complex b = coeffs[deg - i];
            const __m256d br = _mm256_set1_pd(b.real());
            const __m256d bi = _mm256_set1_pd(b.imag());
            const __m256d nr = _mm256_fmsub_pd(accr, vwr, _mm256_fmsub_pd(acci, vwi, br));
            const __m256d ni = _mm256_fmadd_pd(accr, vwi, _mm256_fmadd_pd(acci, vwr, bi));
            accr = nr;
            acci = ni;
        }
        const __m256d a2 = _mm256_fmadd_pd(accr, accr, _mm256_mul_pd(acci, acci));
        _mm256_storeu_pd(out.data() + k, a2);
    }
    if (k < m)
        scalar::unit_circle_abs2(coeffs, phis.subspan(k), out.subspan(k));
}

} // namespace triaxis::kernels::avx2
