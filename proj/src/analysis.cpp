#include "srle/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "srle/error.hpp"
#include "srle/kernels.hpp"

namespace srle::analysis {

void RxInputs::validate() const {
  if (!(p > 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "probability must be in (0, 1], got " + std::to_string(p));
  }
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sequence length must be at least 1");
  if (run_bits < 1 || run_bits > 8) {
    throw Error(ErrorKind::InvalidArgument, "run-control width must be in [1, 8]");
  }
}

std::uint64_t division_count(std::uint64_t run_length, unsigned run_bits) {
  const std::uint64_t cap = std::uint64_t{1} << run_bits;
  return (run_length + cap - 1) / cap;
}

namespace {

// Reclaim of a single run of length n: n - ceil(n / 2^b_r).
double run_reclaim(std::uint64_t n, unsigned run_bits) {
  return static_cast<double>(n - division_count(n, run_bits));
}

}  // namespace

double rx_exact(const RxInputs& in) {
  in.validate();
  const double p = in.p;
  const double q = 1.0 - p;
  const std::uint64_t N = in.n;

  double sum = 0.0;
  double pn = 1.0;  // p^n, built incrementally; underflow to 0 is harmless
  for (std::uint64_t n = 1; n + 2 <= N; ++n) {
    pn *= p;
    if (pn == 0.0) break;
    const double middle = q * q * pn * static_cast<double>(N - 1 - n);
    const double ends = 2.0 * pn * q;
    sum += (middle + ends) * run_reclaim(n, in.run_bits);
  }
  if (N >= 2) {
    const double p_nm1 = std::pow(p, static_cast<double>(N - 1));
    sum += 2.0 * p_nm1 * q * run_reclaim(N - 1, in.run_bits);
  }
  sum += std::pow(p, static_cast<double>(N)) * run_reclaim(N, in.run_bits);
  return sum;
}

double rx_approx(double p, std::uint64_t n) {
  return p * p * static_cast<double>(n - 1);
}

double expected_savings_bits(std::uint64_t count, std::uint64_t /*n*/, unsigned symbol_bits,
                             unsigned run_bits, double rx) {
  if (count == 0) return 0.0;
  const double nx = static_cast<double>(count);
  return symbol_bits * nx - static_cast<double>(symbol_bits + run_bits) * (nx - rx);
}

double epsilon1(double p, std::uint64_t n, unsigned run_bits) {
  const double pn = std::pow(p, static_cast<double>(n));
  if (pn == 0.0 || !std::isfinite(pn)) return 0.0;
  return pn * run_reclaim(n, run_bits);
}

double rx_monte_carlo(double p, std::uint64_t n, unsigned run_bits, std::uint64_t trials,
                      std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "need at least one trial");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "probability out of range");
  const std::uint64_t total = kernels::total_reclaim(p, n, run_bits, trials, seed);
  return static_cast<double>(total) / static_cast<double>(trials);
}

namespace {

void require_unit_interval(double a) {
  if (!(a > 0.0 && a < 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "series ratio must be in (0, 1), got " + std::to_string(a));
  }
}

}  // namespace

double geometric_sum(double a) {
  require_unit_interval(a);
  return 1.0 / (1.0 - a);
}

double geometric_sum_n(double a) {
  require_unit_interval(a);
  return a / ((1.0 - a) * (1.0 - a));
}

double geometric_sum_n2(double a) {
  require_unit_interval(a);
  const double q = 1.0 - a;
  return (a * a + a) / (q * q * q);
}

double lemma_partial_sum(SeriesKind kind, double a, std::uint64_t terms) {
  require_unit_interval(a);
  if (terms < 1) throw Error(ErrorKind::InvalidArgument, "need at least one term");
  double sum = 0.0;
  double an = 1.0;
  for (std::uint64_t n = 0; n <= terms; ++n) {
    const double dn = static_cast<double>(n);
    switch (kind) {
      case SeriesKind::Plain: sum += an; break;
      case SeriesKind::Linear: sum += an * dn; break;
      case SeriesKind::Quadratic: sum += an * dn * dn; break;
    }
    an *= a;
  }
  return sum;
}

std::vector<SweepRow> sweep_rx(std::span<const double> p_grid, std::span<const std::uint64_t> n_grid,
                               std::span<const unsigned> run_bits_grid) {
  if (p_grid.empty() || n_grid.empty() || run_bits_grid.empty()) {
    throw Error(ErrorKind::InvalidArgument, "sweep grids must be non-empty");
  }
  for (unsigned br : run_bits_grid) {
    for (std::uint64_t n : n_grid) {
      for (double p : p_grid) RxInputs{p, n, br}.validate();
    }
  }
  return kernels::evaluate_grid(p_grid, n_grid, run_bits_grid);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "p,N,b_r,rx_exact,rx_approx,epsilon1\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%llu,%u,%.12g,%.12g,%.12g\n", r.p,
                  static_cast<unsigned long long>(r.n), r.run_bits, r.rx_exact, r.rx_approx,
                  r.epsilon1);
    out << buf;
  }
}

}  // namespace srle::analysis
