#include "oracles.hpp"

#include "triaxis/error.hpp"
#include "triaxis/model.hpp"
#include "triaxis/states.hpp"

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace triaxis;
using std::numbers::pi;

namespace {

// exp(-(i/2)[mu0(J^2-Jz^2) + mu1(Jx^2-Jy^2) + mu2(JxJy+JyJx)]) |j,-j> by Taylor series.
oracle::CVec triaxis_oracle(int tj, double mu0, double mu1, double mu2) {
    const auto o = oracle::spin(tj);
    const double j = 0.5 * tj;
    auto g = oracle::add(oracle::mul(o.jx, o.jx), oracle::mul(o.jy, o.jy), -1.0);
    for (auto& row : g)
        for (auto& v : row)
            v *= mu1;
    g = oracle::add(g, oracle::add(oracle::mul(o.jx, o.jy), oracle::mul(o.jy, o.jx)), mu2);
    g = oracle::add(g, oracle::mul(o.jz, o.jz), -mu0);
    for (std::size_t n = 0; n < g.size(); ++n)
        g[n][n] += mu0 * j * (j + 1);
    for (auto& row : g)
        for (auto& v : row)
            v *= 0.5;
    oracle::CVec init(static_cast<std::size_t>(tj) + 1);
    init[0] = 1.0;
    return oracle::expm_apply(g, 1.0, init);
}

double fid(const SpinState& a, const oracle::CVec& b) {
    Complex s{};
    for (std::size_t n = 0; n < b.size(); ++n)
        s += std::conj(a[n]) * b[n];
    return std::abs(s);
}

} // namespace

TEST_SUITE("states") {

TEST_CASE("Bloch directions") {
    const BlochDirection d(1.0, -0.5);
    CHECK(d.phi() == doctest::Approx(2 * pi - 0.5));
    CHECK(BlochDirection(0.3, 2 * pi).phi() == 0.0);
    CHECK_THROWS_AS(BlochDirection(-0.1, 0), InvalidArgument);
    CHECK_THROWS_AS(BlochDirection(3.2, 0), InvalidArgument);
    CHECK(std::abs(BlochDirection(pi / 2, 0.4).tau() - std::polar(1.0, -0.4)) < 1e-15);
}

TEST_CASE("coherent states") {
    const auto s0 = coherent_state(HalfInteger(5), BlochDirection(0, 1.0));
    CHECK(s0[0] == Complex(1.0, 0.0));
    for (std::size_t n = 1; n < 6; ++n)
        CHECK(s0[n] == Complex{});
    const auto h = coherent_state(HalfInteger(1), BlochDirection(pi / 2, 0));
    CHECK(h[0].real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(h[1].real() == doctest::Approx(std::sqrt(0.5)));
    const auto one = coherent_state(HalfInteger(2), BlochDirection(pi / 2, 0));
    CHECK(one[0].real() == doctest::Approx(0.5));
    CHECK(one[1].real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(one[2].real() == doctest::Approx(0.5));
    const auto top = coherent_state(HalfInteger(7), BlochDirection(pi, 0.2));
    CHECK(std::abs(top[7] - std::polar(1.0, -7 * 0.2)) < 1e-15);

    // tau formula of the stereographic form
    const BlochDirection d(1.1, 0.7);
    const auto c = coherent_state(HalfInteger(4), d);
    const Complex tau = std::tan(0.55) * std::polar(1.0, -0.7);
    const double pre = std::pow(1 + std::norm(tau), -2.0);
    for (int n = 0; n <= 4; ++n)
        CHECK(std::abs(c[static_cast<std::size_t>(n)] -
                       pre * std::sqrt(oracle::binomial(4, n)) * std::pow(tau, n)) < 1e-14);
}

TEST_CASE("coherent state equals rotated lowest weight state") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ut(0, pi), up(0, 2 * pi);
    for (int tj : {1, 2, 5, 12, 40, 80}) {
        const auto o = oracle::spin(tj);
        for (int i = 0; i < 4; ++i) {
            const double th = ut(rng), ph = up(rng);
            oracle::CVec v(static_cast<std::size_t>(tj) + 1);
            v[0] = 1.0;
            v = oracle::expm_apply(o.jy, -th, v);
            v = oracle::expm_apply(o.jz, ph, v);
            const auto c = coherent_state(HalfInteger(tj), BlochDirection(th, ph));
            CHECK(std::abs(c.norm() - 1.0) <= 1e-12);
            // phases agree exactly, not just up to a global factor
            double worst = 0.0;
            for (std::size_t n = 0; n < v.size(); ++n)
                worst = std::max(worst, std::abs(c[n] - v[n] * std::polar(1.0, -ph * 0.5 * tj)));
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("large j coherent states stay normalized") {
    for (int tj : {59, 60, 61, 200, 1000, 2000}) {
        const auto c = coherent_state(HalfInteger(tj), BlochDirection(1.3, 0.2));
        CHECK(std::abs(c.norm() - 1.0) <= 1e-12);
    }
}

TEST_CASE("Dicke states") {
    const auto a = dicke_state(HalfInteger(2), -2);
    CHECK(a[0] == Complex(1, 0));
    const auto b = dicke_state(HalfInteger(3), 1);
    CHECK(b[2] == Complex(1, 0));
    CHECK_THROWS_AS(dicke_state(HalfInteger(2), 1), InvalidArgument);
    CHECK_THROWS_AS(dicke_state(HalfInteger(2), 4), InvalidArgument);
}

TEST_CASE("one-axis states") {
    for (int tj : {1, 2, 3, 8, 21}) {
        const HalfInteger j(tj);
        CHECK(fidelity_up_to_phase(oat_state(j, 0.0), coherent_state(j, {pi / 2, 0})) ==
              doctest::Approx(1.0).epsilon(1e-14));
        const double mu = 0.77;
        const auto o = oracle::spin(tj);
        auto jz2 = oracle::mul(o.jz, o.jz);
        const auto ref = oracle::expm_apply(jz2, mu / 2, oracle::vec(coherent_state(j, {pi / 2, 0})));
        const auto s = oat_state(j, mu);
        for (std::size_t n = 0; n < ref.size(); ++n)
            CHECK(std::abs(s[n] - ref[n]) <= 1e-12);
        if (j.is_integer()) {
            const auto p = oat_state(j, 4 * pi);
            const auto z = oat_state(j, 0.0);
            for (std::size_t n = 0; n < j.dim(); ++n)
                CHECK(std::abs(p[n] - z[n]) < 1e-12);
        }
    }
    const auto s = oat_state(HalfInteger(2), 0.6);
    const Complex p = std::polar(0.5, -0.3);
    CHECK(std::abs(s[0] - p) < 1e-15);
    CHECK(std::abs(s[1] - std::sqrt(0.5)) < 1e-15);
    CHECK(std::abs(s[2] - p) < 1e-15);
}

TEST_CASE("two-axis states against the closed forms") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int tj : {2, 3, 4, 5})
        for (int i = 0; i < 50; ++i) {
            const double nu = u(rng);
            const auto a = tact_state(HalfInteger(tj), nu);
            const auto b = closed_form_tact(HalfInteger(tj), nu);
            CHECK(fidelity_up_to_phase(a, b) >= 1 - 1e-10);
            CHECK(std::abs(b.norm() - 1.0) <= 1e-12);
        }
    const auto z = tact_state(HalfInteger(6), 0.0);
    CHECK(z[0] == Complex(1, 0));
    CHECK_THROWS_AS(closed_form_tact(HalfInteger(6), 0.1), InvalidArgument);
}

TEST_CASE("two-axis closed-form examples") {
    const auto s = closed_form_tact(HalfInteger(2), pi / 4);
    CHECK(s[0].real() == doctest::Approx(std::sqrt(0.5)));
    CHECK(s[2].real() == doctest::Approx(-std::sqrt(0.5)));
    // j = 2 at u = pi/2 is the highest weight state
    const auto t = closed_form_tact(HalfInteger(4), pi / 2 / std::sqrt(3.0));
    CHECK(std::abs(t[4]) == doctest::Approx(1.0));
    const auto f = closed_form_tact(HalfInteger(5), 0.0);
    CHECK(f[0].real() == doctest::Approx(1.0));
    // j = 5/2 coefficients are normalized for every u
    for (double nu = 0; nu < 3; nu += 0.1)
        CHECK(std::abs(closed_form_tact(HalfInteger(5), nu).norm() - 1.0) <= 1e-12);
}

TEST_CASE("tri-axis states") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-2.5, 2.5);
    SUBCASE("zero twist leaves the initial state") {
        const auto init = coherent_state(HalfInteger(5), {0.4, 1.0});
        const auto s = triaxis_state(HalfInteger(5), {0, 0, 0}, init);
        for (std::size_t n = 0; n < 6; ++n)
            CHECK(s[n] == init[n]);
    }
    SUBCASE("matches the series evolution") {
        for (int tj : {1, 2, 3, 6})
            for (int i = 0; i < 10; ++i) {
                const double a = u(rng), b = u(rng), c = u(rng);
                const auto s = triaxis_state(HalfInteger(tj), {a, b, c});
                const auto ref = triaxis_oracle(tj, a, b, c);
                for (std::size_t n = 0; n < ref.size(); ++n)
                    CHECK(std::abs(s[n] - ref[n]) < 1e-10);
            }
    }
    SUBCASE("j = 1 closed form") {
        for (int i = 0; i < 100; ++i) {
            const TwistParams p{u(rng), u(rng), u(rng)};
            CHECK(fidelity_up_to_phase(triaxis_state(HalfInteger(2), p),
                                       closed_form_triaxis(HalfInteger(2), p)) >= 1 - 1e-10);
        }
        const auto a = closed_form_triaxis(HalfInteger(2), 0.9, 0.0);
        CHECK(std::abs(a[0] - std::polar(1.0, -0.45)) < 1e-15);
        const auto b = closed_form_triaxis(HalfInteger(2), 0.0, pi);
        CHECK(std::abs(b[2] - Complex(0, -1)) < 1e-15);
    }
    SUBCASE("j = 3/2 closed form and its support") {
        for (int i = 0; i < 100; ++i) {
            const double mu0 = u(rng), mu = u(rng);
            const auto num = triaxis_state(HalfInteger(3), {mu0, mu, 0});
            const auto cf = closed_form_triaxis(HalfInteger(3), mu0, mu);
            CHECK(fidelity_up_to_phase(num, cf) >= 1 - 1e-10);
            CHECK(std::abs(cf.norm() - 1.0) <= 1e-12);
            CHECK(std::abs(num[1]) < 1e-12);
            CHECK(std::abs(num[3]) < 1e-12);
            const double th = std::sqrt(mu0 * mu0 + 3 * mu * mu);
            const double chi = std::abs(mu) * std::sin(th / 2) / th;
            CHECK(std::norm(cf[2]) == doctest::Approx(3 * chi * chi).epsilon(1e-12));
        }
        // complex xi through the TwistParams overload
        for (int i = 0; i < 50; ++i) {
            const TwistParams p{u(rng), u(rng), u(rng)};
            CHECK(fidelity_up_to_phase(triaxis_state(HalfInteger(3), p),
                                       closed_form_triaxis(HalfInteger(3), p)) >= 1 - 1e-10);
        }
        CHECK_THROWS_AS(closed_form_triaxis(HalfInteger(4), 0.1, 0.2), InvalidArgument);
    }
    SUBCASE("TwistParams accessors") {
        const TwistParams p{1.0, 3.0, 4.0};
        CHECK(p.xi() == Complex(3.0, -4.0));
        CHECK(p.abs_xi() == 5.0);
        CHECK(p.vartheta() == doctest::Approx(std::sqrt(1.0 + 75.0)));
    }
}

TEST_CASE("generator identity") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int tj = 1; tj <= 30; ++tj) {
        const auto s = build_spin_operators(HalfInteger(tj));
        const double c1 = u(rng), c2 = u(rng);
        const Complex xi(c1, -c2);
        const Matrix lhs = (c1 / 2) * (s.jx * s.jx - s.jy * s.jy) + (c2 / 2) * (s.jx * s.jy + s.jy * s.jx);
        const Matrix rhs = (xi / 4.0) * (s.jplus * s.jplus) + (std::conj(xi) / 4.0) * (s.jminus * s.jminus);
        CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * std::max(1.0, 0.25 * tj * tj));
    }
}

TEST_CASE("parity") {
    const auto a = parity_of(dicke_state(HalfInteger(6), -6));
    CHECK(a.label == ParityLabel::even);
    CHECK(a.max_violation == 0.0);
    CHECK(parity_of(dicke_state(HalfInteger(6), -4)).label == ParityLabel::odd);
    CHECK(parity_of(tact_state(HalfInteger(4), 0.3)).label == ParityLabel::even);
    const auto m = parity_of(coherent_state(HalfInteger(2), {pi / 2, 0}));
    CHECK(m.label == ParityLabel::mixed);
    CHECK(m.max_violation > 0.1);
    CHECK(to_string(ParityLabel::odd) == "odd");
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int tj = 1; tj <= 40; ++tj) {
        const auto t = parity_of(triaxis_state(HalfInteger(tj), {u(rng), u(rng), u(rng)}));
        CHECK(t.label == ParityLabel::even);
        CHECK(t.max_violation < 1e-12);
        CHECK(parity_of(tact_state(HalfInteger(tj), u(rng))).max_violation < 1e-12);
    }
}

TEST_CASE("concurrence") {
    CHECK(two_qubit_concurrence(coherent_state(HalfInteger(2), {1.0, 0.3})) < 1e-15);
    const auto full = triaxis_state(HalfInteger(2), {0.4, pi / 2, 0});
    CHECK(two_qubit_concurrence(full) == doctest::Approx(1.0).epsilon(1e-12));
    const auto half = triaxis_state(HalfInteger(2), {0.0, 0.0, pi / 6});
    CHECK(two_qubit_concurrence(half) == doctest::Approx(0.5).epsilon(1e-12));
    // brute-force Gamma determinant for a random state
    std::mt19937_64 rng(1);
    const auto r = oracle::random_state(2, rng);
    const Complex g00 = r[2], g11 = r[0], g01 = r[1] / std::sqrt(2.0);
    CHECK(two_qubit_concurrence(r) == doctest::Approx(2 * std::abs(g00 * g11 - g01 * g01)));
    CHECK_THROWS_AS(two_qubit_concurrence(dicke_state(HalfInteger(3), 1)), InvalidArgument);
}

TEST_CASE("fidelity") {
    std::mt19937_64 rng(3);
    const auto a = oracle::random_state(5, rng);
    CHECK(fidelity_up_to_phase(a, a) == doctest::Approx(1.0));
    std::vector<Complex> rot(a.amplitudes().begin(), a.amplitudes().end());
    for (auto& v : rot)
        v *= std::polar(1.0, 1.234);
    CHECK(fidelity_up_to_phase(a, SpinState(a.j(), rot)) == doctest::Approx(1.0));
    CHECK(fidelity_up_to_phase(dicke_state(HalfInteger(2), 0), dicke_state(HalfInteger(2), 2)) == 0.0);
    CHECK_THROWS_AS(fidelity_up_to_phase(a, dicke_state(HalfInteger(2), 0)), InvalidArgument);
    const auto h = triaxis_hamiltonian(HalfInteger(5), {1, 2, 3});
    CHECK(fidelity_up_to_phase(a, evolve(h, 0.0, a)) == 1.0);
}

TEST_CASE("state files") {
    std::mt19937_64 rng(31);
    const auto a = oracle::random_state(7, rng);
    std::stringstream ss;
    write_state(ss, a);
    const auto b = read_state(ss);
    for (std::size_t n = 0; n < 8; ++n)
        CHECK(b[n] == a[n]);

    std::istringstream ok("# comment\ntwo_j = 1\n\n0.6 0\n0 0.8\n");
    CHECK(read_state(ok)[1] == Complex(0, 0.8));
    std::istringstream unnorm("two_j = 1\n1 0\n1 0\n");
    CHECK_THROWS_AS(read_state(unnorm), InvalidArgument);
    std::istringstream unnorm2("two_j = 1\n1 0\n1 0\n");
    CHECK(read_state(unnorm2, true)[0].real() == doctest::Approx(std::sqrt(0.5)));
    for (const char* bad : {"two_j = 1\n1 0\n", "two_j = x\n", "two_j = 1\n1 0\n0 0 0\n",
                            "two_j = 1\n1 0\n0 0\n0 0\n", "two_j = 1\nnan 0\n0 0\n", "",
                            "two_j = -1\n"}) {
        std::istringstream in(bad);
        CHECK_THROWS_AS(read_state(in), InvalidArgument);
    }
}

}
