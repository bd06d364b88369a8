#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "srle/analysis.hpp"
#include "srle/error.hpp"

using namespace srle;
using namespace srle::analysis;

TEST_CASE("rx_exact all-x sequence reclaims N - ceil(N / 2^b_r)") {
  CHECK(rx_exact({1.0, 1000, 4}) == doctest::Approx(937.0).epsilon(1e-12));
  CHECK(rx_exact({1.0, 1, 4}) == 0.0);
}

TEST_CASE("rx_exact matches exhaustive enumeration") {
  CHECK(std::abs(rx_exact({0.5, 4, 1}) - 0.5625) < 1e-12);
  CHECK(std::abs(testing::enumerate_reclaim(0.5, 4, 1) - 0.5625) < 1e-12);
  CHECK(std::abs(rx_exact({0.5, 4, 2}) - 0.75) < 1e-12);
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned br = 1; br <= 3; ++br) {
      for (double p : {0.1, 0.37, 0.9}) {
        CHECK(std::abs(rx_exact({p, n, br}) - testing::enumerate_reclaim(p, n, br)) < 1e-12);
      }
    }
  }
}

TEST_CASE("rx_exact rejects invalid inputs") {
  CHECK_THROWS_AS(rx_exact({0.0, 10, 4}), Error);
  CHECK_THROWS_AS(rx_exact({1.5, 10, 4}), Error);
  CHECK_THROWS_AS(rx_exact({0.5, 0, 4}), Error);
  CHECK_THROWS_AS(rx_exact({0.5, 10, 0}), Error);
  CHECK_THROWS_AS(rx_exact({0.5, 10, 9}), Error);
}

TEST_CASE("rx_approx") {
  CHECK(rx_approx(0.5, 101) == 25.0);
  CHECK(rx_approx(0.0, 1000) == 0.0);
  CHECK(rx_approx(1.0, 1001) == 1000.0);
}

TEST_CASE("expected_savings_bits") {
  CHECK(expected_savings_bits(100, 1000, 8, 4, rx_approx(0.1, 1000)) == doctest::Approx(-280.12));
  CHECK(expected_savings_bits(1600, 1600, 8, 4, 1600.0 - 100.0) == doctest::Approx(11600.0));
  CHECK(expected_savings_bits(0, 1000, 8, 4, 0.0) == 0.0);
}

TEST_CASE("epsilon1") {
  CHECK(epsilon1(0.5, 20, 4) == doctest::Approx(18.0 / 1048576.0).epsilon(1e-12));
  CHECK(epsilon1(0.99, 10000, 4) < 1.0);
  CHECK(epsilon1(1e-300, 100, 4) == 0.0);
  CHECK(epsilon1(0.999999, 100000000, 8) <= 1.0);
}

TEST_CASE("epsilon1 is at most one below p = N^(-1/N), and below N everywhere") {
  // p^N * N <= 1 exactly when p <= N^(-1/N); above that the all-x term can
  // exceed one (0.99^100 * 93 is about 34).
  for (int i = 1; i <= 99; ++i) {
    const double p = i / 100.0;
    for (std::uint64_t n : {10u, 100u, 1000u, 10000u}) {
      const double cutoff = std::pow(static_cast<double>(n), -1.0 / static_cast<double>(n));
      for (unsigned br : {1u, 4u, 8u}) {
        const double e = epsilon1(p, n, br);
        CHECK(e < static_cast<double>(n));
        if (p <= cutoff) CHECK(e <= 1.0);
      }
    }
  }
  CHECK(epsilon1(0.99, 100, 4) > 1.0);
}

TEST_CASE("rx_monte_carlo converges to rx_exact") {
  const double mc = rx_monte_carlo(0.5, 500, 4, 20000, 7);
  const double exact = rx_exact({0.5, 500, 4});
  CHECK(std::abs(mc - exact) / exact < 0.02);
  CHECK(rx_monte_carlo(1.0, 100, 4, 50, 1) == 93.0);
  CHECK(rx_monte_carlo(1e-9, 100, 4, 100, 1) == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(rx_monte_carlo(0.3, 200, 2, 100, 5) == rx_monte_carlo(0.3, 200, 2, 100, 5));
  CHECK_THROWS_AS(rx_monte_carlo(0.3, 200, 2, 0, 5), Error);
}

TEST_CASE("lemma closed forms") {
  CHECK(geometric_sum(0.5) == 2.0);
  CHECK(geometric_sum_n(0.5) == 2.0);
  CHECK(geometric_sum_n2(0.5) == 6.0);
  CHECK_THROWS_AS(geometric_sum(0.0), Error);
  CHECK_THROWS_AS(geometric_sum_n(1.0), Error);
  CHECK_THROWS_AS(geometric_sum_n2(-0.5), Error);
}

TEST_CASE("lemma partial sums converge from below") {
  struct Case {
    SeriesKind kind;
    double (*closed)(double);
  };
  for (const Case& c : {Case{SeriesKind::Plain, geometric_sum}, Case{SeriesKind::Linear, geometric_sum_n},
                        Case{SeriesKind::Quadratic, geometric_sum_n2}}) {
    CHECK(std::abs(lemma_partial_sum(c.kind, 0.5, 200) - c.closed(0.5)) <= 1e-9);
    double prev = 0.0;
    for (std::uint64_t t = 1; t <= 200; ++t) {
      const double s = lemma_partial_sum(c.kind, 0.5, t);
      CHECK(s >= prev);
      CHECK(s <= c.closed(0.5) + 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("sweep_rx") {
  SUBCASE("single point") {
    const std::vector<double> p{0.5};
    const std::vector<std::uint64_t> n{100};
    const std::vector<unsigned> br{4};
    auto rows = sweep_rx(p, n, br);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rx_approx == 24.75);
    CHECK(rows[0].rx_exact == rx_exact({0.5, 100, 4}));
  }
  SUBCASE("b_r = 8 coincides with the approximation") {
    std::vector<double> p;
    for (int i = 1; i <= 9; ++i) p.push_back(i / 10.0);
    const std::vector<std::uint64_t> n{10000};
    const std::vector<unsigned> br{8};
    double worst = 0.0;
    for (const auto& r : sweep_rx(p, n, br)) worst = std::max(worst, std::abs(r.rx_exact - r.rx_approx) / 10000.0);
    CHECK(worst <= 0.01);
  }
  SUBCASE("row order is b_r, then N, then p") {
    const std::vector<double> p{0.2, 0.4};
    const std::vector<std::uint64_t> n{10, 20};
    const std::vector<unsigned> br{2, 4};
    auto rows = sweep_rx(p, n, br);
    REQUIRE(rows.size() == 8);
    CHECK(rows[0].run_bits == 2);
    CHECK(rows[0].n == 10);
    CHECK(rows[1].p == 0.4);
    CHECK(rows[2].n == 20);
    CHECK(rows[4].run_bits == 4);
  }
  SUBCASE("empty grid") {
    const std::vector<double> p;
    const std::vector<std::uint64_t> n{10};
    const std::vector<unsigned> br{4};
    CHECK_THROWS_AS(sweep_rx(p, n, br), Error);
  }
}

TEST_CASE("no-split identity holds whenever 2^b_r >= N") {
  for (unsigned br = 1; br <= 8; ++br) {
    const std::uint64_t cap = std::uint64_t{1} << br;
    for (std::uint64_t n = 2; n <= cap; n += (cap / 8 + 1)) {
      for (double p : {0.01, 0.3, 0.5, 0.77, 0.99, 1.0}) {
        CHECK(std::abs(rx_exact({p, n, br}) - rx_approx(p, n)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("splitting only lowers the reclaim") {
  for (std::uint64_t n : {5u, 50u, 500u, 5000u}) {
    for (double p : {0.1, 0.5, 0.8, 0.95}) {
      double prev = -1.0;
      for (unsigned br = 1; br <= 8; ++br) {
        const double rx = rx_exact({p, n, br});
        CHECK(rx >= prev - 1e-9);
        CHECK(rx <= rx_approx(p, n) + 1e-9);
        prev = rx;
      }
    }
  }
}

TEST_CASE("exact and approximate reclaim agree on the sign of the savings") {
  for (std::uint64_t n : {10000u, 50000u}) {
    for (unsigned br : {4u, 8u}) {
      for (unsigned bx : {1u, 2u, 4u, 8u, 16u}) {
        for (int i = 1; i <= 19; ++i) {
          const double p = i * 0.05;
          const auto nx = static_cast<std::uint64_t>(std::llround(p * static_cast<double>(n)));
          const double exact = expected_savings_bits(nx, n, bx, br, rx_exact({p, n, br}));
          const double approx = expected_savings_bits(nx, n, bx, br, rx_approx(p, n));
          if (std::abs(exact) <= br * static_cast<double>(n) * 0.001) continue;
          CHECK((exact > 0) == (approx > 0));
        }
      }
    }
  }
}
