#include "triaxis/kernels.hpp"

namespace triaxis::kernels {

namespace {

struct Table {
    Backend backend;
    void (*matvec)(std::span<const Complex>, std::size_t, std::span<const Complex>,
                   std::span<Complex>);
    Complex (*dot)(std::span<const Complex>, std::span<const Complex>);
    void (*unit_circle_abs2)(std::span<const Complex>, std::span<const double>,
                             std::span<double>);
};

bool cpu_has_avx2() noexcept {
#if defined(TRIAXIS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Table select() noexcept {
#if defined(TRIAXIS_HAVE_AVX2)
    if (cpu_has_avx2())
        return {Backend::avx2, &avx2::matvec, &avx2::dot, &avx2::unit_circle_abs2};
#endif
    return {Backend::scalar, &scalar::matvec, &scalar::dot, &scalar::unit_circle_abs2};
}

const Table& table() noexcept {
    static const Table t = select();
    return t;
}

} // namespace

Backend active_backend() noexcept { return table().backend; }

std::string_view backend_name(Backend b) noexcept {
    return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() noexcept { return cpu_has_avx2(); }

void matvec(std::span<const Complex> a, std::size_t n, std::span<const Complex> x,
            std::span<Complex> y) {
    table().matvec(a, n, x, y);
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    return table().dot(a, b);
}

void unit_circle_abs2(std::span<const Complex> coeffs, std::span<const double> phis,
                      std::span<double> out) {
    table().unit_circle_abs2(coeffs, phis, out);
}

} // namespace triaxis::kernels
