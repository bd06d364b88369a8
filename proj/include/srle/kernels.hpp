#pragma once

// OpenMP kernels for the data-parallel loops in the toolkit. Each one has a
// serial twin in reference.hpp that tests compare against bit-for-bit.

#include <cstdint>
#include <span>
#include <vector>

#include "srle/analysis.hpp"
#include "srle/core.hpp"

namespace srle::kernels {

/// Histogram of a symbol span.
DistributionEstimate count_symbols(std::span<const Symbol> symbols);

/// Reclaimed element count of one simulated binary sequence. Trial `index`
/// draws from its own generator stream derived from (seed, index).
std::uint64_t simulate_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t seed,
                               std::uint64_t index);

/// Sum of simulate_reclaim over trials [0, trials).
std::uint64_t total_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                            std::uint64_t seed);

/// Evaluates every grid point of the sweep.
std::vector<analysis::SweepRow> evaluate_grid(std::span<const double> p_grid,
                                              std::span<const std::uint64_t> n_grid,
                                              std::span<const unsigned> run_bits_grid);

}  // namespace srle::kernels
