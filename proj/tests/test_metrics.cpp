#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ksat/metrics.hpp"

using namespace ksat;

namespace {
std::vector<double> random_sample(RngStream& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  return v;
}
}  // namespace

TEST_CASE("wasserstein_1d examples") {
  const std::vector<double> a{0.3, -0.2, 0.9};
  CHECK(wasserstein_1d(a, a).value == 0.0);
  const std::vector<double> c(50, 0.25), d(50, -0.5);
  CHECK(wasserstein_1d(c, d).value == doctest::Approx(0.75));
  const std::vector<double> e{0.0, 1.0}, f{0.5, 0.5};
  CHECK(wasserstein_1d(e, f).value == 0.5);
  const auto r = wasserstein_1d(e, f);
  CHECK(r.n_a == 2);
  CHECK(r.n_b == 2);
}

TEST_CASE("wasserstein_1d errors") {
  const std::vector<double> a{0.0}, b{0.0, 1.0}, empty;
  CHECK_THROWS_AS(wasserstein_1d(a, b), std::invalid_argument);
  CHECK_THROWS_AS(wasserstein_1d(empty, empty), std::invalid_argument);
}

TEST_CASE("wasserstein_1d matches brute-force optimal matching on tiny samples") {
  RngStream rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + rng.below(6);
    auto a = random_sample(rng, n);
    auto b = random_sample(rng, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    double best = INFINITY;
    do {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += std::abs(a[i] - b[perm[i]]);
      best = std::min(best, s / n);
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(wasserstein_1d(a, b).value == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("wasserstein_1d metric axioms") {
  RngStream rng(101);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng.below(64);
    const auto a = random_sample(rng, n);
    const auto b = random_sample(rng, n);
    const auto c = random_sample(rng, n);
    const double ab = wasserstein_1d(a, b).value;
    REQUIRE(ab >= 0.0);
    REQUIRE(ab <= 2.0);
    REQUIRE(ab == wasserstein_1d(b, a).value);
    REQUIRE(ab <= wasserstein_1d(a, c).value + wasserstein_1d(c, b).value + 1e-12);

    auto shuffled = a;
    std::reverse(shuffled.begin(), shuffled.end());
    REQUIRE(wasserstein_1d(a, shuffled).value == 0.0);

    const double delta = rng.uniform(-0.5, 0.5);
    auto shifted = a;
    for (auto& x : shifted) x += delta;
    REQUIRE(std::abs(wasserstein_1d(shifted, b).value - ab) <= std::abs(delta) + 1e-12);
  }
}

TEST_CASE("summarize examples") {
  const Summary z = summarize(std::vector<double>(10, 0.0));
  CHECK(z.mean == 0.0);
  CHECK(z.sd == 0.0);
  for (double q : z.quantiles) CHECK(q == 0.0);

  const Summary pm = summarize(std::vector<double>{-1.0, 1.0});
  CHECK(pm.mean == 0.0);
  CHECK(pm.quantiles[3] == 0.0);

  std::vector<double> grid(101);
  for (int i = 0; i <= 100; ++i) grid[i] = -1.0 + 2.0 * i / 100.0;
  const Summary g = summarize(grid);
  CHECK(g.quantiles[3] == doctest::Approx(0.0));
  CHECK(g.quantiles[2] == doctest::Approx(-0.5));
  CHECK(g.quantiles[4] == doctest::Approx(0.5));
  CHECK(g.quantiles[0] == doctest::Approx(-0.98));

  CHECK_THROWS(summarize(std::vector<double>{}));
}
