#include "srle/kernels.hpp"

#include <omp.h>

#include <unordered_map>

#include "rng.hpp"

namespace srle::kernels {

DistributionEstimate count_symbols(std::span<const Symbol> symbols) {
  DistributionEstimate dist;
  const auto size = static_cast<std::int64_t>(symbols.size());
#pragma omp parallel
  {
    std::unordered_map<Symbol, std::uint64_t> local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < size; ++i) ++local[symbols[static_cast<std::size_t>(i)]];
#pragma omp critical(srle_count_merge)
    for (const auto& [x, n] : local) dist.counts[x] += n;
  }
  dist.total = symbols.size();
  return dist;
}

std::uint64_t simulate_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t seed,
                               std::uint64_t index) {
  auto rng = detail::stream_rng(seed, index);
  const std::uint64_t cap = std::uint64_t{1} << run_bits;
  std::uint64_t reclaimed = 0;
  std::uint64_t run = 0;
  auto close_run = [&] {
    if (run > 0) reclaimed += run - (run + cap - 1) / cap;
    run = 0;
  };
  for (std::uint64_t i = 0; i < n; ++i) {
    if (detail::unit_double(rng) < p) {
      ++run;
    } else {
      close_run();
    }
  }
  close_run();
  return reclaimed;
}

std::uint64_t total_reclaim(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                            std::uint64_t seed) {
  std::uint64_t total = 0;
  const auto count = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(static) reduction(+ : total)
  for (std::int64_t t = 0; t < count; ++t) {
    total += simulate_reclaim(p, n, run_bits, seed, static_cast<std::uint64_t>(t));
  }
  return total;
}

std::vector<analysis::SweepRow> evaluate_grid(std::span<const double> p_grid,
                                              std::span<const std::uint64_t> n_grid,
                                              std::span<const unsigned> run_bits_grid) {
  const std::size_t np = p_grid.size();
  const std::size_t nn = n_grid.size();
  std::vector<analysis::SweepRow> rows(np * nn * run_bits_grid.size());
  const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    const double p = p_grid[idx % np];
    const std::uint64_t n = n_grid[(idx / np) % nn];
    const unsigned br = run_bits_grid[idx / (np * nn)];
    rows[idx] = {p, n, br, analysis::rx_exact({p, n, br}), analysis::rx_approx(p, n),
                 p < 1.0 ? analysis::epsilon1(p, n, br) : 0.0};
  }
  return rows;
}

}  // namespace srle::kernels
