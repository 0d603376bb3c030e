#include "triaxis/kernels.hpp"

#include <cmath>

namespace triaxis::kernels::scalar {

void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y) {
    for (std::size_t r = 0; r < n; ++r) {
        const Complex* row = a.data() + r * n;
        double re = 0.0;
        double im = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
            const double ar = row[c].real(), ai = row[c].imag();
            const double xr = x[c].real(), xi = x[c].imag();
            re += ar * xr - ai * xi;
            im += ar * xi + ai * xr;
        }
        y[r] = Complex(re, im);
    }
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out) {
    const std::size_t deg = coeffs.empty() ? 0 : coeffs.size() - 1;
    for (std::size_t k = 0; k < phis.size(); ++k) {
        const double wr = std::cos(phis[k]);
        const double wi = std::sin(phis[k]);
        double accr = 0.0;
        double acci = 0.0;
        for (std::size_t i = 0; i <= deg && !coeffs.empty(); ++i) {
            const Complex b = coeffs[deg - i];
            const double nr = accr * wr - acci * wi + b.real();
            const double ni = accr * wi + acci * wr + b.imag();
            accr = nr;
            acci = ni;
        }
        out[k] = accr * accr + acci * acci;
    }
}

} // namespace triaxis::kernels::scalar
