#include "triaxis/kernels.hpp"

#include <doctest.h>

#include <numbers>
#include <random>
#include <vector>

using namespace triaxis::kernels;

namespace {

std::vector<Complex> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(n);
    for (auto& x : v)
        x = {g(rng), g(rng)};
    return v;
}

} // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference against naive loops") {
    std::mt19937_64 rng(1);
    for (std::size_t n : {0u, 1u, 2u, 3u, 7u, 16u, 33u}) {
        const auto a = random_vec(n * n, rng), x = random_vec(n, rng);
        std::vector<Complex> y(n);
        scalar::matvec(a, n, x, y);
        for (std::size_t r = 0; r < n; ++r) {
            Complex s{};
            for (std::size_t c = 0; c < n; ++c)
                s += a[r * n + c] * x[c];
            CHECK(std::abs(y[r] - s) < 1e-12);
        }
        Complex d{};
        for (std::size_t i = 0; i < n; ++i)
            d += std::conj(x[i]) * y[i];
        CHECK(std::abs(scalar::dot(x, y) - d) < 1e-10 * (1 + std::abs(d)));

        std::vector<double> phis{0.0, 0.3, 2.0, 5.9};
        std::vector<double> out(phis.size());
        scalar::unit_circle_abs2(x, phis, out);
        for (std::size_t k = 0; k < phis.size(); ++k) {
            Complex s{};
            for (std::size_t i = 0; i < n; ++i)
                s += x[i] * std::polar(1.0, static_cast<double>(i) * phis[k]);
            CHECK(out[k] == doctest::Approx(std::norm(s)).epsilon(1e-12));
        }
    }
}

TEST_CASE("dispatch reports a backend") {
    const auto b = active_backend();
    CHECK((backend_name(b) == "scalar" || backend_name(b) == "avx2"));
    if (!avx2_available())
        CHECK(b == Backend::scalar);
}

#if defined(TRIAXIS_HAVE_AVX2)
TEST_CASE("AVX2 variants agree with the scalar reference") {
    if (!avx2_available()) {
        MESSAGE("CPU lacks AVX2/FMA; skipping");
        return;
    }
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = random_vec(n * n, rng), x = random_vec(n, rng), z = random_vec(n, rng);
        std::vector<Complex> ys(n), yv(n);
        scalar::matvec(a, n, x, ys);
        avx2::matvec(a, n, x, yv);
        for (std::size_t r = 0; r < n; ++r)
            CHECK(std::abs(ys[r] - yv[r]) <= 1e-13 * (1.0 + static_cast<double>(n)));
        const Complex ds = scalar::dot(x, z), dv = avx2::dot(x, z);
        CHECK(std::abs(ds - dv) <= 1e-13 * (1.0 + static_cast<double>(n)));

        std::vector<double> phis(37);
        for (std::size_t k = 0; k < phis.size(); ++k)
            phis[k] = 2 * std::numbers::pi * static_cast<double>(k) / 37.0;
        std::vector<double> qs(phis.size()), qv(phis.size());
        scalar::unit_circle_abs2(x, phis, qs);
        avx2::unit_circle_abs2(x, phis, qv);
        for (std::size_t k = 0; k < phis.size(); ++k)
            CHECK(std::abs(qs[k] - qv[k]) <= 1e-12 * (1.0 + qs[k]) * (1.0 + static_cast<double>(n)));
    }
}
#endif

}
