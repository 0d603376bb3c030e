#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace triaxis::detail {

/// Above this 2j the coherent-state magnitudes are accumulated in log space;
/// C(2j, j) overflows near 2j ~ 1030 and the half-angle powers underflow
/// long before that.
inline constexpr int log_space_two_j = 60;

inline double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// sqrt(C(n, k)) for k = 0..n.
inline std::vector<double> sqrt_binomials(int n) {
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    if (n < log_space_two_j) {
        double c = 1.0;
        for (int k = 0; k <= n; ++k) {
            out[static_cast<std::size_t>(k)] = std::sqrt(c);
            c = c * (n - k) / (k + 1);
        }
    } else {
        for (int k = 0; k <= n; ++k)
            out[static_cast<std::size_t>(k)] = std::exp(0.5 * log_binomial(n, k));
    }
    return out;
}

/// b_k = sqrt(C(n,k)) cos^{n-k}(theta/2) sin^k(theta/2), the real magnitudes of
/// the coherent-state amplitudes. theta == pi is taken as the exact limit.
inline std::vector<double> coherent_magnitudes(int n, double theta) {
    std::vector<double> b(static_cast<std::size_t>(n) + 1, 0.0);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    if (theta == std::numbers::pi || c == 0.0) {
        b[static_cast<std::size_t>(n)] = 1.0;
        return b;
    }
    if (s == 0.0) {
        b[0] = 1.0;
        return b;
    }
    if (n < log_space_two_j) {
        const auto sb = sqrt_binomials(n);
        for (int k = 0; k <= n; ++k)
            b[static_cast<std::size_t>(k)] = sb[static_cast<std::size_t>(k)] *
                                             std::pow(c, n - k) * std::pow(s, k);
        return b;
    }
    const double lc = std::log(std::abs(c));
    const double ls = std::log(std::abs(s));
    for (int k = 0; k <= n; ++k) {
        const double mag = std::exp(0.5 * log_binomial(n, k) + (n - k) * lc + k * ls);
        const bool negative = (c < 0.0 && (n - k) % 2 != 0) != (s < 0.0 && k % 2 != 0);
        b[static_cast<std::size_t>(k)] = negative ? -mag : mag;
    }
    return b;
}

} // namespace triaxis::detail
