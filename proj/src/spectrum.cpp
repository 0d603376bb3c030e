#include "triaxis/spectrum.hpp"

#include "triaxis/error.hpp"
#include "triaxis/format.hpp"
#include "triaxis/model.hpp"
#include "triaxis/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace triaxis {

namespace {

HermitianOperator sub_block(const Matrix& m, std::size_t parity) {
    const std::size_t n = m.dim();
    const std::size_t size = (n + 1 - parity) / 2;
    Matrix b(size);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c)
            b(r, c) = m(2 * r + parity, 2 * c + parity);
    return HermitianOperator(std::move(b));
}

GapInfo smallest_gap(const std::vector<double>& e) {
    GapInfo g;
    if (e.size() < 2)
        return g;
    g.size = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        const double d = e[i + 1] - e[i];
        if (d < g.size) {
            g.size = d;
            g.energy = 0.5 * (e[i] + e[i + 1]);
            g.lower_index = static_cast<int>(i);
        }
    }
    return g;
}

// min gap / mean spacing for one block; NaN when undefined.
double block_clustering(const std::vector<double>& e, const GapInfo& g) {
    if (e.size() < 2)
        return std::numeric_limits<double>::quiet_NaN();
    const double mean = (e.back() - e.front()) / static_cast<double>(e.size() - 1);
    if (!(mean > 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return g.size / mean;
}

} // namespace

ParityBlocks parity_blocks(const HermitianOperator& h) {
    const std::size_t n = h.dim();
    const Matrix& m = h.matrix();
    const double tol = 1e-10 * std::max(1.0, m.max_abs());
    double worst = 0.0;
    std::size_t wr = 0, wc = 0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if ((r + c) % 2 == 1 && std::abs(m(r, c)) > worst) {
                worst = std::abs(m(r, c));
                wr = r;
                wc = c;
            }
    if (worst > tol) {
        std::ostringstream os;
        os << "operator does not commute with parity: |H(" << wr << "," << wc << ")| = " << worst
           << " couples the even and odd sectors";
        throw InvalidArgument(os.str());
    }
    return {sub_block(m, 0), n > 1 ? sub_block(m, 1) : HermitianOperator(Matrix(0))};
}

SpectrumSweep eigen_sweep(HalfInteger j, double chi, double mu0_from, double mu0_to,
                          int n_points, unsigned threads) {
    if (n_points < 2)
        throw InvalidArgument("a sweep needs at least 2 grid points");
    if (!(chi > 0.0) || !std::isfinite(chi))
        throw InvalidArgument("sweep scale chi must be positive");
    if (!std::isfinite(mu0_from) || !std::isfinite(mu0_to))
        throw InvalidArgument("sweep bounds must be finite");

    SpectrumSweep s;
    s.j = j;
    s.chi = chi;
    const auto np = static_cast<std::size_t>(n_points);
    s.mu0_grid.resize(np);
    for (std::size_t g = 0; g < np; ++g)
        s.mu0_grid[g] = mu0_from + (mu0_to - mu0_from) * static_cast<double>(g) /
                                       static_cast<double>(np - 1);
    s.levels.resize(np);
    s.parity.resize(np);
    s.even_levels.resize(np);
    s.odd_levels.resize(np);

    parallel_for(np, threads, [&](std::size_t g) {
        const double mu0 = s.mu0_grid[g];
        try {
            const auto blocks = parity_blocks(rotated_hamiltonian(j, mu0 * chi, chi));
            auto even = hermitian_eigenvalues(blocks.even);
            auto odd = blocks.odd.dim() > 0 ? hermitian_eigenvalues(blocks.odd)
                                            : std::vector<double>{};
            std::vector<double> all;
            std::vector<int> par;
            all.reserve(even.size() + odd.size());
            std::size_t a = 0, b = 0;
            while (a < even.size() || b < odd.size()) {
                if (b >= odd.size() || (a < even.size() && even[a] <= odd[b])) {
                    all.push_back(even[a++]);
                    par.push_back(1);
                } else {
                    all.push_back(odd[b++]);
                    par.push_back(-1);
                }
            }
            s.levels[g] = std::move(all);
            s.parity[g] = std::move(par);
            s.even_levels[g] = std::move(even);
            s.odd_levels[g] = std::move(odd);
        } catch (const NumericalError& e) {
            std::ostringstream os;
            os << "sweep point mu0 = " << format_double(mu0) << ": " << e.what();
            throw NumericalError(os.str());
        }
    });
    return s;
}

DOSHistogram density_of_states(const std::vector<double>& levels, int n_bins) {
    if (levels.size() < 2)
        throw InvalidArgument("density of states needs at least 2 levels");
    if (n_bins < 1)
        throw InvalidArgument("density of states needs at least 1 bin");
    const auto [lo_it, hi_it] = std::minmax_element(levels.begin(), levels.end());
    const double lo = *lo_it, hi = *hi_it;
    DOSHistogram h;
    if (!(hi > lo)) {
        h.bin_edges = {lo, hi};
        h.counts = {static_cast<int>(levels.size())};
        h.peak_energy = lo;
        return h;
    }
    const auto nb = static_cast<std::size_t>(n_bins);
    const double width = (hi - lo) / n_bins;
    h.bin_edges.resize(nb + 1);
    for (std::size_t b = 0; b <= nb; ++b)
        h.bin_edges[b] = lo + width * static_cast<double>(b);
    h.bin_edges[nb] = hi;
    h.counts.assign(nb, 0);
    for (const double e : levels) {
        auto b = static_cast<std::size_t>(std::floor((e - lo) / width));
        h.counts[std::min(b, nb - 1)] += 1;
    }
    const auto peak = static_cast<std::size_t>(
        std::max_element(h.counts.begin(), h.counts.end()) - h.counts.begin());
    h.peak_energy = 0.5 * (h.bin_edges[peak] + h.bin_edges[peak + 1]);
    return h;
}

SpacingStats spacing_distribution(std::vector<double> levels, int window) {
    if (levels.size() < 10)
        throw InvalidArgument("spacing statistics need at least 10 levels from one parity block, got " +
                              std::to_string(levels.size()));
    if (window < 1)
        throw InvalidArgument("unfolding window must be at least 1");
    std::sort(levels.begin(), levels.end());
    const std::size_t n = levels.size();
    const auto w = static_cast<std::size_t>(window);
    SpacingStats st;
    st.spacings.reserve(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const std::size_t lo = i >= w ? i - w : 0;
        const std::size_t hi = std::min(n - 1, i + 1 + w);
        const double local = (levels[hi] - levels[lo]) / static_cast<double>(hi - lo);
        if (!(local > 0.0))
            throw NumericalError("local mean spacing vanishes near level " + std::to_string(i) +
                                 "; levels are degenerate");
        st.spacings.push_back((levels[i + 1] - levels[i]) / local);
    }
    double sum = 0.0, smax = 0.0;
    for (const double s : st.spacings) {
        sum += s;
        smax = std::max(smax, s);
    }
    st.mean = sum / static_cast<double>(st.spacings.size());
    const double width = 0.1;
    const auto nb = static_cast<std::size_t>(std::max(1.0, std::ceil(smax / width)));
    st.bin_edges.resize(nb + 1);
    for (std::size_t b = 0; b <= nb; ++b)
        st.bin_edges[b] = width * static_cast<double>(b);
    st.counts.assign(nb, 0);
    for (const double s : st.spacings)
        st.counts[std::min(static_cast<std::size_t>(s / width), nb - 1)] += 1;
    return st;
}

int default_dos_bins(std::size_t n_levels) {
    return std::max(1, static_cast<int>(std::lround(static_cast<double>(n_levels) / 4.0)));
}

EsqptEstimate esqpt_estimate(const SpectrumSweep& sweep, int n_bins) {
    EsqptEstimate est;
    const std::size_t ng = sweep.mu0_grid.size();
    est.points.resize(ng);
    for (std::size_t g = 0; g < ng; ++g) {
        auto& p = est.points[g];
        p.mu0 = sweep.mu0_grid[g];
        const auto& lv = sweep.levels[g];
        const int bins = n_bins > 0 ? n_bins : default_dos_bins(lv.size());
        p.dos_peak = lv.size() >= 2 ? density_of_states(lv, bins).peak_energy
                                    : (lv.empty() ? 0.0 : lv.front());
        p.even_gap = smallest_gap(sweep.even_levels[g]);
        p.odd_gap = smallest_gap(sweep.odd_levels[g]);
        const double ce = block_clustering(sweep.even_levels[g], p.even_gap);
        const double co = block_clustering(sweep.odd_levels[g], p.odd_gap);
        p.clustering = std::isnan(ce) ? co : (std::isnan(co) ? ce : std::min(ce, co));
    }

    double best = std::numeric_limits<double>::infinity(), worst = 0.0;
    std::size_t arg = 0;
    for (std::size_t g = 0; g < ng; ++g) {
        const double c = est.points[g].clustering;
        if (std::isnan(c))
            continue;
        if (c < best) {
            best = c;
            arg = g;
        }
        worst = std::max(worst, c);
    }
    if (!std::isfinite(best) || !(worst > best))
        return est;
    std::size_t lo = arg, hi = arg;
    auto inside = [&](std::size_t g) {
        const double c = est.points[g].clustering;
        return !std::isnan(c) && c <= 2.0 * best;
    };
    while (lo > 0 && inside(lo - 1))
        --lo;
    while (hi + 1 < ng && inside(hi + 1))
        ++hi;
    est.clustering_region = std::make_pair(sweep.mu0_grid[lo], sweep.mu0_grid[hi]);
    est.strongest_clustering_mu0 = sweep.mu0_grid[arg];
    return est;
}

void write_spectrum_csv(std::ostream& out, const SpectrumSweep& s) {
    out << "mu0,k,E_k,parity\n";
    for (std::size_t g = 0; g < s.mu0_grid.size(); ++g)
        for (std::size_t k = 0; k < s.levels[g].size(); ++k)
            out << format_double(s.mu0_grid[g]) << ',' << k << ',' << format_double(s.levels[g][k])
                << ',' << s.parity[g][k] << '\n';
}

} // namespace triaxis
