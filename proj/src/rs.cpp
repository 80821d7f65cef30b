#include "ksat/rs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ksat/parallel.hpp"

namespace ksat {

namespace {

// log((e^a + e^b) / 2) without overflow.
double log_av_exp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  if (hi == lo) return hi;
  return hi + std::log1p(std::exp(lo - hi)) - std::numbers::ln2;
}

}  // namespace

RsBreakdown rs_eval(const Population& pop, const ModelParams& params, std::size_t n_mc, const RngStream& rng) {
  params.validate();
  pop.validate();
  if (n_mc < 100) throw std::invalid_argument("n_mc must be >= 100");

  const std::size_t m = pop.size();
  const int p = params.p;
  const ClauseWeight weight(params.beta);
  const double mean_clauses = params.alpha * p;

  std::vector<double> cavity(n_mc);
  const RngStream cavity_rng = rng.split("cavity");
  parallel_for(n_mc, [&](std::size_t t) {
    RngStream s = cavity_rng.split(t);
    const std::uint64_t r = sample_poisson(mean_clauses, s);
    double a_plus = 0.0;
    double a_minus = 0.0;
    for (std::uint64_t k = 0; k < r; ++k) {
      double q = 1.0;
      for (int i = 0; i < p - 1; ++i) {
        const int j = s.sign();
        q *= 0.5 * (1.0 + j * pop.members[s.below(m)]);
      }
      const double theta = weight.log_weight(q);
      if (s.sign() > 0) a_plus += theta;
      else a_minus += theta;
    }
    cavity[t] = log_av_exp(a_plus, a_minus);
  });

  std::vector<double> theta(n_mc);
  const RngStream correction_rng = rng.split("correction");
  parallel_for(n_mc, [&](std::size_t t) {
    RngStream s = correction_rng.split(t);
    double q = 1.0;
    for (int i = 0; i < p; ++i) {
      const int j = s.sign();
      q *= 0.5 * (1.0 + j * pop.members[s.below(m)]);
    }
    theta[t] = weight.log_weight(q);
  });

  RsBreakdown out;
  out.log2_term = std::numbers::ln2;
  out.cavity_term = estimate_of(cavity);
  const Estimate mean_theta = estimate_of(theta);
  const double scale = (p - 1) * params.alpha;
  out.correction_term = {scale * mean_theta.value, scale * mean_theta.std_error, mean_theta.n_samples};
  out.total.value = out.log2_term + out.cavity_term.value - out.correction_term.value;
  out.total.std_error = combined_error(out.cavity_term.std_error, out.correction_term.std_error);
  out.total.n_samples = n_mc;
  return out;
}

}  // namespace ksat
