#pragma once

// Single-threaded reference versions of the OpenMP kernels.

#include <cstdint>
#include <span>
#include <vector>

#include "srle/analysis.hpp"
#include "srle/core.hpp"

namespace srle::reference {

DistributionEstimate count_symbols(std::span<const Symbol> symbols);

std::uint64_t total_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                            std::uint64_t seed);

std::vector<analysis::SweepRow> evaluate_grid(std::span<const double> p_grid,
                                              std::span<const std::uint64_t> n_grid,
                                              std::span<const unsigned> run_bits_grid);

}  // namespace srle::reference
