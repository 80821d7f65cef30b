#pragma once

#include <cstddef>

#include "ksat/cavity.hpp"
#include "ksat/model.hpp"
#include "ksat/rng.hpp"
#include "ksat/stats.hpp"

namespace ksat {

// Replica-symmetric functional evaluated against a population:
//   total = log 2 + E log Av_eps exp sum_{k <= Poisson(alpha p)} theta_k(z_.k, eps)
//                 - (p - 1) alpha E theta(z_1, ..., z_p).
struct RsBreakdown {
  double log2_term = 0.0;
  Estimate cavity_term;
  Estimate correction_term;  // (p - 1) alpha E theta, in [-(p-1) alpha beta, 0]
  Estimate total;
};

// Monte Carlo evaluation with n_mc trials per stochastic term. The epsilon
// average is exact. Cavity trial t uses rng.split("cavity").split(t) and
// correction trial t uses rng.split("correction").split(t); the two terms are
// independent and their errors add in quadrature.
RsBreakdown rs_eval(const Population& pop, const ModelParams& params, std::size_t n_mc, const RngStream& rng);

}  // namespace ksat
