#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ksat/parallel.hpp"
#include "ksat/rs.hpp"

using namespace ksat;

TEST_CASE("rs_eval degenerate parameters return log 2 exactly") {
  const RngStream rng(6);
  const Population pop = make_population(InitPreset::Uniform, 1000, rng);
  for (const ModelParams params : {ModelParams{3, 0.0, 1.0, 1}, ModelParams{2, 0.8, 0.0, 1}}) {
    const RsBreakdown b = rs_eval(pop, params, 1000, rng.split("rs"));
    CHECK(b.total.value == std::numbers::ln2);
    CHECK(b.total.std_error == 0.0);
    CHECK(b.cavity_term.value == 0.0);
    CHECK(b.correction_term.value == 0.0);
  }
}

TEST_CASE("rs_eval term bounds") {
  RngStream rng(41);
  for (int t = 0; t < 20; ++t) {
    const ModelParams params{2 + static_cast<int>(rng.below(4)), rng.uniform(0.0, 1.0), rng.uniform(0.0, 3.0), 1};
    const Population pop = make_population(InitPreset::Uniform, 1000, rng.split(t));
    const RsBreakdown b = rs_eval(pop, params, 2000, rng.split(t + 100));
    // Each trial lies in [-beta * r, 0], so the mean lies in [-beta * E r, 0] up to sampling.
    CHECK(b.cavity_term.value <= 0.0);
    CHECK(b.cavity_term.value >= -2.0 * params.beta * params.alpha * params.p - 5 * b.cavity_term.std_error);
    CHECK(b.correction_term.value <= 0.0);
    CHECK(b.correction_term.value >= -(params.p - 1) * params.alpha * params.beta);
    CHECK(b.total.value == doctest::Approx(b.log2_term + b.cavity_term.value - b.correction_term.value));
  }
  CHECK_THROWS_AS(rs_eval(Population{{0.0}, 0}, ModelParams{}, 99, RngStream(1)), std::invalid_argument);
  CHECK_THROWS_AS(rs_eval(Population{}, ModelParams{}, 1000, RngStream(1)), std::invalid_argument);
}

// For the all-zeros population each clause multiplies exp A(J_p) by
// c = 1 + (e^{-beta} - 1) / 2^{p-1}. With a clauses of J_p = +1 among r,
// the inner term is log((c^a + c^{r-a}) / 2), so the cavity term is an exact
// Poisson-binomial series. Values below come from that series (float64,
// truncated at r = 60); the correction term is (p-1) alpha log(1 + (e^{-beta}-1)/2^p).
TEST_CASE("rs_eval on the all-zeros population matches the series oracle") {
  struct Case {
    int p;
    double alpha, beta;
    double cavity, correction, total;
  };
  const std::vector<Case> cases{
      {2, 0.1, 0.5, -0.020711029856015452, -0.01035480869570495, 0.6827909593996347},
      {2, 0.4, 2.0, -0.19571587245722588, -0.09742329774109827, 0.5948546058438177},
      {3, 0.05, 1.0, -0.012347045126466684, -0.008231160535100085, 0.6890312959685787},
  };
  const Population zeros = make_population(InitPreset::Zeros, 1000, RngStream(1));
  for (const auto& c : cases) {
    const ModelParams params{c.p, c.alpha, c.beta, 314};
    const RsBreakdown b = rs_eval(zeros, params, 1'000'000, params.stream());
    CHECK(std::abs(b.cavity_term.value - c.cavity) <= 4 * b.cavity_term.std_error);
    CHECK(b.correction_term.value == doctest::Approx(c.correction).epsilon(1e-13));
    CHECK(b.correction_term.std_error == 0.0);
    CHECK(std::abs(b.total.value - c.total) <= 4 * b.total.std_error);
  }
}

TEST_CASE("rs_eval is independent of the worker count") {
  const ModelParams params{3, 0.2, 1.0, 5};
  const Population pop = make_population(InitPreset::Uniform, 2000, params.stream());
  set_max_threads(1);
  const RsBreakdown a = rs_eval(pop, params, 5000, params.stream());
  set_max_threads(5);
  const RsBreakdown b = rs_eval(pop, params, 5000, params.stream());
  set_max_threads(0);
  CHECK(a.total.value == b.total.value);
  CHECK(a.total.std_error == b.total.std_error);
}
