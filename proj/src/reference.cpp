#include "srle/reference.hpp"

#include <unordered_map>

#include "srle/kernels.hpp"

namespace srle::reference {

DistributionEstimate count_symbols(std::span<const Symbol> symbols) {
  std::unordered_map<Symbol, std::uint64_t> local;
  for (Symbol x : symbols) ++local[x];
  DistributionEstimate dist;
  dist.counts.insert(local.begin(), local.end());
  dist.total = symbols.size();
  return dist;
}

std::uint64_t total_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                            std::uint64_t seed) {
  std::uint64_t total = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    total += kernels::simulate_reclaim(p, n, run_bits, seed, t);
  }
  return total;
}

std::vector<analysis::SweepRow> evaluate_grid(std::span<const double> p_grid,
                                              std::span<const std::uint64_t> n_grid,
                                              std::span<const unsigned> run_bits_grid) {
  std::vector<analysis::SweepRow> rows;
  rows.reserve(p_grid.size() * n_grid.size() * run_bits_grid.size());
  for (unsigned br : run_bits_grid) {
    for (std::uint64_t n : n_grid) {
      for (double p : p_grid) {
        rows.push_back({p, n, br, analysis::rx_exact({p, n, br}), analysis::rx_approx(p, n),
                        p < 1.0 ? analysis::epsilon1(p, n, br) : 0.0});
      }
    }
  }
  return rows;
}

}  // namespace srle::reference
