#pragma once

// Spectra of the rotated Hamiltonian along mu0 = chi0/chi, resolved by
// parity, plus the level statistics used to locate the excited-state
// transition.

#include "triaxis/spinalg.hpp"

#include <optional>
#include <ostream>
#include <vector>

namespace triaxis {

struct SpectrumSweep {
    HalfInteger j;
    double chi = 0.0;
    std::vector<double> mu0_grid;
    /// levels[g] holds all 2j+1 eigenvalues at mu0_grid[g], ascending.
    std::vector<std::vector<double>> levels;
    /// parity[g][k] = +1 or -1: the block that levels[g][k] came from.
    std::vector<std::vector<int>> parity;
    /// Block-resolved spectra, ascending within each block. Labels of these
    /// never change along the sweep, whereas parity[g][k] can when levels of
    /// opposite parity cross.
    std::vector<std::vector<double>> even_levels;
    std::vector<std::vector<double>> odd_levels;
};

/// Diagonalizes rotated_hamiltonian(j, mu0 chi, chi) at n_points values of mu0
/// spaced evenly over [mu0_from, mu0_to]. Requires n_points >= 2 and chi > 0.
SpectrumSweep eigen_sweep(HalfInteger j, double chi, double mu0_from, double mu0_to,
                          int n_points, unsigned threads = 1);

struct ParityBlocks {
    HermitianOperator even;  // indices n = 0, 2, 4, ...
    HermitianOperator odd;   // indices n = 1, 3, ...
};

/// Throws InvalidArgument naming the worst off-block entry when H couples
/// the two sectors by more than 1e-10 max(1, max|H|).
ParityBlocks parity_blocks(const HermitianOperator& h);

struct DOSHistogram {
    std::vector<double> bin_edges;  // n_bins + 1
    std::vector<int> counts;
    double peak_energy = 0.0;  // center of the leftmost fullest bin
};

/// Uniform bins over [min, max], the last bin closed. All levels equal gives a
/// single zero-width bin.
DOSHistogram density_of_states(const std::vector<double>& levels, int n_bins);

struct SpacingStats {
    std::vector<double> spacings;   // unfolded
    std::vector<double> bin_edges;  // width 0.1 from 0
    std::vector<int> counts;
    double mean = 0.0;
};

/// Nearest-neighbour spacings of one parity block, unfolded by the local mean
/// spacing over the 2w+1 spacings centered on each (window clipped at the
/// ends). Needs at least 10 levels.
SpacingStats spacing_distribution(std::vector<double> levels, int window = 5);

struct GapInfo {
    double size = 0.0;    // smallest adjacent gap inside the block
    double energy = 0.0;  // midpoint of that gap
    int lower_index = -1; // index of the lower level within the block; -1 if block < 2
};

struct EsqptPoint {
    double mu0 = 0.0;
    double dos_peak = 0.0;
    GapInfo even_gap;
    GapInfo odd_gap;
    /// Smallest intra-block gap divided by the mean intra-block spacing.
    double clustering = 0.0;
};

struct EsqptEstimate {
    std::vector<EsqptPoint> points;
    /// Grid points around the strongest clustering whose score is within a
    /// factor 2 of the minimum; empty when no block has two levels or the
    /// spectrum does not vary.
    std::optional<std::pair<double, double>> clustering_region;
    std::optional<double> strongest_clustering_mu0;
};

/// Default DOS bin count for a spectrum of n levels: about four levels per bin.
int default_dos_bins(std::size_t n_levels);

EsqptEstimate esqpt_estimate(const SpectrumSweep& sweep, int n_bins = 0);

/// Columns mu0, k, E_k, parity.
void write_spectrum_csv(std::ostream& out, const SpectrumSweep& s);

} // namespace triaxis
