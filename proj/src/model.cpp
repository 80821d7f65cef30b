#include "ksat/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace ksat {

void ModelParams::validate() const {
  if (p < 2) throw std::invalid_argument("p must be >= 2, got " + std::to_string(p));
  if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(beta) || beta < 0.0) throw std::invalid_argument("beta must be finite and >= 0");
}

ClauseSigns::ClauseSigns(std::vector<int> j) : j_(std::move(j)) {
  if (j_.size() < 2) throw std::invalid_argument("clause needs at least two signs");
  for (int v : j_) {
    if (v != 1 && v != -1) throw std::invalid_argument("clause signs must be +1 or -1");
  }
}

ClauseSigns ClauseSigns::negated() const {
  std::vector<int> n(j_.size());
  std::transform(j_.begin(), j_.end(), n.begin(), [](int v) { return -v; });
  return ClauseSigns(std::move(n));
}

ClauseWeight::ClauseWeight(double beta)
    : beta_(beta), expm1_neg_beta_(std::expm1(-beta)), exp_neg_beta_(std::exp(-beta)) {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
}

double ClauseWeight::log_weight(double q) const {
  if (q <= 0.0 || beta_ == 0.0) return 0.0;
  if (q >= 1.0) return -beta_;
  const double a = expm1_neg_beta_ * q;
  // log1p is accurate until the argument approaches -1; past that point the
  // two-term form (1 - q) + q e^{-beta} keeps the small remainder exact.
  const double v = a > -0.5 ? std::log1p(a) : std::log((1.0 - q) + q * exp_neg_beta_);
  return std::clamp(v, -beta_, 0.0);
}

double checked_spin(double sigma) {
  if (!(std::abs(sigma) <= 1.0 + kSigmaTolerance)) {
    throw std::domain_error("spin value outside [-1, 1]: " + std::to_string(sigma));
  }
  return std::clamp(sigma, -1.0, 1.0);
}

double theta_eval(const ClauseSigns& signs, std::span<const double> sigma, double beta) {
  if (!(beta >= 0.0)) throw std::domain_error("beta must be >= 0");
  if (sigma.size() != signs.size()) throw std::domain_error("sigma length differs from clause arity");
  double q = 1.0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    q *= 0.5 * (1.0 + signs[i] * checked_spin(sigma[i]));
  }
  return ClauseWeight(beta).log_weight(q);
}

ClauseSigns sample_clause_signs(int p, RngStream& rng) {
  if (p < 2) throw std::invalid_argument("p must be >= 2");
  std::vector<int> j(static_cast<std::size_t>(p));
  for (auto& v : j) v = rng.sign();
  return ClauseSigns(std::move(j));
}

std::uint64_t sample_poisson(double mean, RngStream& rng) {
  if (!std::isfinite(mean) || mean < 0.0) throw std::domain_error("Poisson mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  std::poisson_distribution<std::uint64_t> dist(mean);
  return dist(rng);
}

}  // namespace ksat
