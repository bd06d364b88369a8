#pragma once

// Expected-reclaim mathematics for run-length encoding under an i.i.d. source.
//
// For a symbol x with probability p in a sequence of length N, the reclaim
// R_x is the expected number of x-elements that do not appear in the encoded
// variable, i.e. occurrences minus run-control divisions. A symbol is worth
// run-length encoding when b_x * N_x - (b_x + b_r) * (N_x - R_x) >= 0.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace srle::analysis {

struct RxInputs {
  double p = 0.0;
  std::uint64_t n = 1;
  unsigned run_bits = 4;

  /// Throws InvalidArgument unless p in (0, 1], n >= 1, run_bits in [1, 8].
  void validate() const;
};

/// Exact R_x by direct summation over run lengths, splitting runs longer
/// than 2^b_r into divisions.
double rx_exact(const RxInputs& in);

/// p^2 (N - 1).
double rx_approx(double p, std::uint64_t n);

/// Bits saved by run-length encoding one symbol; negative means inflation.
double expected_savings_bits(std::uint64_t count, std::uint64_t n, unsigned symbol_bits,
                             unsigned run_bits, double rx);

/// Contribution of the all-x sequence, p^N (N - ceil(N / 2^b_r)).
double epsilon1(double p, std::uint64_t n, unsigned run_bits);

/// Divisions a run of length n needs: ceil(n / 2^b_r).
std::uint64_t division_count(std::uint64_t run_length, unsigned run_bits);

/// Mean reclaim over `trials` simulated binary sequences. Deterministic in
/// `seed` and independent of the thread count.
double rx_monte_carlo(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                      std::uint64_t seed);

// Appendix closed forms for a in (0, 1).
double geometric_sum(double a);     // sum a^n       = 1 / (1 - a)
double geometric_sum_n(double a);   // sum a^n n     = a / (1 - a)^2
double geometric_sum_n2(double a);  // sum a^n n^2   = (a^2 + a) / (1 - a)^3

enum class SeriesKind { Plain, Linear, Quadratic };

/// sum_{n=0}^{terms} a^n * {1, n, n^2}.
double lemma_partial_sum(SeriesKind kind, double a, std::uint64_t terms);

struct SweepRow {
  double p = 0.0;
  std::uint64_t n = 0;
  unsigned run_bits = 0;
  double rx_exact = 0.0;
  double rx_approx = 0.0;
  double epsilon1 = 0.0;

  bool operator==(const SweepRow&) const = default;
};

/// One row per grid point, ordered with run_bits outermost, then N, then p.
std::vector<SweepRow> sweep_rx(std::span<const double> p_grid, std::span<const std::uint64_t> n_grid,
                               std::span<const unsigned> run_bits_grid);

/// CSV with header `p,N,b_r,rx_exact,rx_approx,epsilon1`.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace srle::analysis
