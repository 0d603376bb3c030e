#include "oracles.hpp"

#include "triaxis/error.hpp"
#include "triaxis/model.hpp"
#include "triaxis/semiclassical.hpp"
#include "triaxis/spectrum.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <sstream>

using namespace triaxis;

namespace {

// Kolmogorov-Smirnov distance of a sample from the unit exponential.
double ks_exponential(std::vector<double> s) {
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = 1 - std::exp(-s[i]);
        d = std::max({d, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
    }
    return d;
}

} // namespace

TEST_SUITE("spectrum") {

TEST_CASE("parity blocks") {
    const auto b1 = parity_blocks(triaxis_hamiltonian(HalfInteger(2), {1, 0.3, 0.2}));
    CHECK(b1.even.dim() == 2);
    CHECK(b1.odd.dim() == 1);
    const auto b10 = parity_blocks(rotated_hamiltonian(HalfInteger(20), 1.5, 1.0));
    CHECK(b10.even.dim() == 11);
    CHECK(b10.odd.dim() == 10);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int i = 0; i < 20; ++i) {
        const auto h = triaxis_hamiltonian(HalfInteger(10), {u(rng), u(rng), u(rng)});
        const auto b = parity_blocks(h);
        auto merged = hermitian_eigenvalues(b.even);
        const auto odd = hermitian_eigenvalues(b.odd);
        merged.insert(merged.end(), odd.begin(), odd.end());
        std::sort(merged.begin(), merged.end());
        const auto full = hermitian_eigenvalues(h);
        for (std::size_t k = 0; k < full.size(); ++k)
            CHECK(std::abs(merged[k] - full[k]) <= 1e-10);
    }
    const auto s = build_spin_operators(HalfInteger(4));
    CHECK_THROWS_AS(parity_blocks(HermitianOperator(s.jx)), InvalidArgument);
}

TEST_CASE("sweeps") {
    const auto sw = eigen_sweep(HalfInteger(20), 1.0, 1.0, 2.0, 21, 3);
    REQUIRE(sw.levels.size() == 21);
    for (std::size_t g = 0; g < 21; ++g) {
        CHECK(sw.levels[g].size() == 21);
        CHECK(std::is_sorted(sw.levels[g].begin(), sw.levels[g].end()));
        CHECK(sw.even_levels[g].size() == 11);
        CHECK(sw.odd_levels[g].size() == 10);
        CHECK(std::count(sw.parity[g].begin(), sw.parity[g].end(), 1) == 11);
        const auto full = hermitian_eigenvalues(
            triaxis_hamiltonian(HalfInteger(20), {sw.mu0_grid[g], 0.6, 0.8}));
        for (std::size_t k = 0; k < 21; ++k)
            CHECK(std::abs(full[k] - sw.levels[g][k]) <= 1e-10);
    }
    // serial and threaded runs agree exactly
    const auto one = eigen_sweep(HalfInteger(20), 1.0, 1.0, 2.0, 21, 1);
    CHECK(one.levels == sw.levels);

    // level continuity across the grid
    const auto fine = eigen_sweep(HalfInteger(20), 1.0, 1.0, 2.0, 201, 4);
    std::vector<double> jumps;
    for (std::size_t g = 1; g < 201; ++g)
        for (std::size_t k = 0; k < 21; ++k)
            jumps.push_back(std::abs(fine.levels[g][k] - fine.levels[g - 1][k]));
    std::vector<double> sorted = jumps;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    CHECK(*std::max_element(jumps.begin(), jumps.end()) < 10 * median);

    const auto half = eigen_sweep(HalfInteger(1), 1.0, -3.0, 3.0, 5);
    for (const auto& lv : half.levels)
        CHECK(lv[0] == doctest::Approx(lv[1]));
    CHECK_THROWS_AS(eigen_sweep(HalfInteger(4), 1.0, 0, 1, 1), InvalidArgument);
    CHECK_THROWS_AS(eigen_sweep(HalfInteger(4), 0.0, 0, 1, 3), InvalidArgument);

    std::ostringstream os;
    write_spectrum_csv(os, eigen_sweep(HalfInteger(2), 1.0, 0.0, 1.0, 2));
    CHECK(os.str().rfind("mu0,k,E_k,parity\n0,0,", 0) == 0);
}

TEST_CASE("large-mu0 limit for j = 1") {
    // chi -> 0 relative to chi0: compare with the diagonal of (chi0/2)(J^2 - Jz^2)
    const double chi0 = 1e4;
    const auto lv = hermitian_eigenvalues(rotated_hamiltonian(HalfInteger(2), chi0, 1.0));
    CHECK(lv[0] / chi0 == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(lv[2] / chi0 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("density of states") {
    std::vector<double> ladder(40);
    std::iota(ladder.begin(), ladder.end(), 0.0);
    const auto flat = density_of_states(ladder, 10);
    for (int c : flat.counts)
        CHECK(c == 4);
    const auto two = density_of_states({0.0, 1.0}, 2);
    CHECK(two.counts == std::vector<int>{1, 1});
    const auto deg = density_of_states({2.0, 2.0, 2.0}, 5);
    CHECK(deg.counts == std::vector<int>{3});
    CHECK(deg.peak_energy == 2.0);
    const auto tie = density_of_states({0.0, 0.1, 0.9, 1.0}, 2);
    CHECK(tie.peak_energy == doctest::Approx(0.25));
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<double> r(500);
    for (auto& v : r)
        v = g(rng);
    const auto h = density_of_states(r, 17);
    CHECK(std::accumulate(h.counts.begin(), h.counts.end(), 0) == 500);
    CHECK_THROWS_AS(density_of_states({1.0}, 3), InvalidArgument);
    CHECK(default_dos_bins(21) == 5);
}

TEST_CASE("spacing statistics") {
    std::vector<double> ladder(50);
    for (std::size_t i = 0; i < ladder.size(); ++i)
        ladder[i] = 0.3 * static_cast<double>(i);
    const auto st = spacing_distribution(ladder);
    for (double s : st.spacings)
        CHECK(s == doctest::Approx(1.0));
    CHECK_THROWS_AS(spacing_distribution(std::vector<double>(9, 0.0)), InvalidArgument);

    // synthetic Poisson levels: uniform points on an interval
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0, 1);
    std::vector<double> lv(10001);
    for (auto& v : lv)
        v = u(rng);
    const auto p = spacing_distribution(lv, 50);
    CHECK(p.spacings.size() == 10000);
    CHECK(std::abs(p.mean - 1.0) < 0.02);
    // 1% critical value of the one-sample KS test, n = 1e4
    CHECK(ks_exponential(p.spacings) < 1.63 / std::sqrt(1e4));

    const auto big = eigen_sweep(HalfInteger(80), 1.0, 3.0, 3.1, 2);
    const auto b = spacing_distribution(big.even_levels[0]);
    CHECK(std::accumulate(b.counts.begin(), b.counts.end(), 0) == static_cast<int>(b.spacings.size()));
    CHECK(std::abs(b.mean - 1.0) < 0.2);
}

TEST_CASE("ESQPT estimate") {
    const auto sw = eigen_sweep(HalfInteger(20), 1.0, 1.0, 2.0, 21);
    const auto e = esqpt_estimate(sw);
    REQUIRE(e.points.size() == 21);
    for (const auto& p : e.points) {
        CHECK(p.even_gap.lower_index >= 0);
        CHECK(p.odd_gap.lower_index >= 0);
        CHECK(p.clustering > 0.0);
    }
    REQUIRE(e.clustering_region.has_value());
    CHECK(e.clustering_region->first <= *e.strongest_clustering_mu0);
    CHECK(e.clustering_region->second >= *e.strongest_clustering_mu0);
    const auto none = esqpt_estimate(eigen_sweep(HalfInteger(1), 1.0, 0.0, 1.0, 5));
    CHECK_FALSE(none.clustering_region.has_value());
}

TEST_CASE("DOS peak tracks the separatrix") {
    double prev = 1e9;
    for (int tj : {40, 80, 160}) {
        const auto lv = hermitian_eigenvalues(rotated_hamiltonian(HalfInteger(tj), 1.5, 1.0));
        const double j = 0.5 * tj;
        const double peak = density_of_states(lv, default_dos_bins(lv.size())).peak_energy / (j * j);
        const double dev = std::abs(peak - separatrix_energy(1.5, 1.0)) / separatrix_energy(1.5, 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 0.1);
}

}
