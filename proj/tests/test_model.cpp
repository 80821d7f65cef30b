#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ksat/model.hpp"

using namespace ksat;

TEST_CASE("theta_eval examples") {
  const ClauseSigns pp({1, 1});
  const std::vector<double> full{1.0, 1.0};
  CHECK(theta_eval(pp, full, 1.0) == -1.0);

  const std::vector<double> killed{-1.0, 0.3};
  for (double beta : {0.0, 0.5, 3.0, 40.0}) CHECK(theta_eval(pp, killed, beta) == 0.0);

  const std::vector<double> zero{0.0, 0.0};
  CHECK(theta_eval(pp, zero, std::log(2.0)) == doctest::Approx(std::log(7.0 / 8.0)).epsilon(1e-15));
}

TEST_CASE("theta_eval domain errors and tolerance") {
  const ClauseSigns pp({1, -1});
  const std::vector<double> outside{1.1, 0.0};
  CHECK_THROWS_AS(theta_eval(pp, outside, 1.0), std::domain_error);
  const std::vector<double> ok{0.5, 0.5};
  CHECK_THROWS_AS(theta_eval(pp, ok, -0.1), std::domain_error);
  const std::vector<double> rounding{1.0 + 1e-13, -1.0 - 1e-13};
  CHECK(theta_eval(pp, rounding, 2.0) == -2.0);
  const std::vector<double> wrong_len{0.0, 0.0, 0.0};
  CHECK_THROWS(theta_eval(pp, wrong_len, 1.0));
}

TEST_CASE("ClauseSigns rejects bad entries") {
  CHECK_THROWS_AS(ClauseSigns({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(ClauseSigns({1}), std::invalid_argument);
  CHECK(ClauseSigns({1, -1}).negated() == ClauseSigns({-1, 1}));
}

TEST_CASE("theta properties on random inputs") {
  RngStream rng(2024);
  for (int t = 0; t < 100'000; ++t) {
    const int p = 2 + static_cast<int>(rng.below(5));
    const double beta = rng.uniform(0.0, 8.0);
    const ClauseSigns j = sample_clause_signs(p, rng);
    std::vector<double> sigma(static_cast<std::size_t>(p));
    for (auto& x : sigma) x = rng.uniform(-1.0, 1.0);
    const double v = theta_eval(j, sigma, beta);
    REQUIRE(v <= 0.0);
    REQUIRE(v >= -beta);
    CHECK(theta_eval(j, sigma, 0.0) == 0.0);

    std::vector<double> flipped(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i) flipped[i] = -sigma[i];
    REQUIRE(theta_eval(j.negated(), flipped, beta) == v);
  }
}

TEST_CASE("theta restricted to the hypercube matches the two-branch clause") {
  for (int p = 2; p <= 5; ++p) {
    for (int js = 0; js < (1 << p); ++js) {
      std::vector<int> jv(static_cast<std::size_t>(p));
      for (int i = 0; i < p; ++i) jv[i] = (js >> i) & 1 ? 1 : -1;
      const ClauseSigns j(jv);
      for (int ss = 0; ss < (1 << p); ++ss) {
        std::vector<double> sigma(static_cast<std::size_t>(p));
        bool violated = true;
        for (int i = 0; i < p; ++i) {
          sigma[i] = (ss >> i) & 1 ? 1.0 : -1.0;
          violated = violated && sigma[i] == jv[i];
        }
        for (double beta : {0.3, 1.0, 5.0, 800.0}) {
          CHECK(theta_eval(j, sigma, beta) == (violated ? -beta : 0.0));
        }
      }
    }
  }
}

TEST_CASE("large beta stays finite near the violated corner") {
  const ClauseSigns j({1, 1, 1});
  const std::vector<double> near{1.0, 1.0, 1.0 - 1e-9};
  const double v = theta_eval(j, near, 60.0);
  CHECK(std::isfinite(v));
  // 1 - q = 5e-10 dominates e^{-60}; forming 2 - 1e-9 already costs ~1e-6
  // relative accuracy in 1 - q.
  CHECK(v == doctest::Approx(std::log(5e-10 + (1 - 5e-10) * std::exp(-60.0))).epsilon(1e-6));
}

TEST_CASE("sample_clause_signs") {
  RngStream a = RngStream(7).split("signs");
  RngStream b = RngStream(7).split("signs");
  const auto sa = sample_clause_signs(3, a);
  CHECK(sa.size() == 3);
  CHECK(sa == sample_clause_signs(3, b));

  RngStream rng = RngStream(11).split("balance");
  constexpr int n = 100'000;
  std::vector<double> sum(4, 0.0);
  for (int t = 0; t < n; ++t) {
    const auto s = sample_clause_signs(4, rng);
    for (int i = 0; i < 4; ++i) sum[i] += s[i];
  }
  for (double s : sum) CHECK(std::abs(s / n) <= 4.0 / std::sqrt(n));
}

TEST_CASE("sample_poisson") {
  RngStream rng = RngStream(5).split("poisson");
  for (int i = 0; i < 100; ++i) CHECK(sample_poisson(0.0, rng) == 0);
  CHECK_THROWS_AS(sample_poisson(-1.0, rng), std::domain_error);
  CHECK_THROWS_AS(sample_poisson(NAN, rng), std::domain_error);
  CHECK_THROWS_AS(sample_poisson(INFINITY, rng), std::domain_error);

  constexpr int n = 100'000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto k = static_cast<double>(sample_poisson(3.0, rng));
    sum += k;
    sum_sq += k * k;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean - 3.0) <= 4.0 * std::sqrt(3.0 / n));
  // Var of the sample variance for Poisson(3) is (mu + 2 mu^2) / n = 21 / n.
  CHECK(std::abs(var - 3.0) <= 4.0 * std::sqrt(21.0 / n));
}

TEST_CASE("RngStream determinism and independence of labels") {
  RngStream a = RngStream(99).split(3).split("x");
  RngStream b = RngStream(99).split(3).split("x");
  RngStream c = RngStream(99).split(4).split("x");
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const auto va = a();
    CHECK(va == b());
    any_diff = any_diff || va != c();
  }
  CHECK(any_diff);

  RngStream u(1);
  for (int i = 0; i < 10'000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(u.below(7) < 7);
  }
}

TEST_CASE("ModelParams validation") {
  CHECK_NOTHROW(ModelParams{2, 0.0, 0.0, 1}.validate());
  CHECK_THROWS_AS((ModelParams{1, 0.1, 1.0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{3, -0.1, 1.0, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((ModelParams{3, 0.1, NAN, 1}.validate()), std::invalid_argument);
}
