#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ksat/rng.hpp"

namespace ksat {

// Clause arity p, connectivity alpha, inverse temperature beta and the master
// seed every random stream is derived from.
struct ModelParams {
  int p = 3;
  double alpha = 0.05;
  double beta = 1.0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument unless p >= 2 and alpha, beta are finite
  // and nonnegative.
  void validate() const;
  RngStream stream() const { return RngStream(seed); }
};

// Literal signs J_1..J_p of one clause. The clause penalizes the single
// pattern sigma_i = J_i for all i.
class ClauseSigns {
public:
  ClauseSigns() = default;
  // Throws std::invalid_argument if fewer than two entries or any entry is not +-1.
  explicit ClauseSigns(std::vector<int> j);

  std::size_t size() const { return j_.size(); }
  int operator[](std::size_t i) const { return j_[i]; }
  const std::vector<int>& values() const { return j_; }
  ClauseSigns negated() const;

  friend bool operator==(const ClauseSigns&, const ClauseSigns&) = default;

private:
  std::vector<int> j_;
};

// Tolerance for |sigma_i| slightly above 1 from rounding; such values are
// projected back onto [-1, 1].
inline constexpr double kSigmaTolerance = 1e-12;

// Evaluates log(1 + (e^{-beta} - 1) q) for a clause product q in [0, 1].
// Precomputes the beta-dependent constants for use in inner loops.
class ClauseWeight {
public:
  explicit ClauseWeight(double beta);

  double beta() const { return beta_; }
  // Result lies in [-beta, 0]; q is clamped to [0, 1].
  double log_weight(double q) const;

private:
  double beta_;
  double expm1_neg_beta_;
  double exp_neg_beta_;
};

// Smoothed clause function on [-1,1]^p:
//   theta = log(1 + (e^{-beta} - 1) * prod_i (1 + J_i sigma_i) / 2).
// Equals 0 or -beta on {-1,1}^p. Throws std::domain_error if beta < 0,
// sizes differ, or some |sigma_i| > 1 + kSigmaTolerance.
double theta_eval(const ClauseSigns& signs, std::span<const double> sigma, double beta);

// Projects sigma onto [-1, 1] after checking the tolerance; throws
// std::domain_error otherwise.
double checked_spin(double sigma);

ClauseSigns sample_clause_signs(int p, RngStream& rng);

// Poisson(mean) draw. mean = 0 returns 0. Throws std::domain_error on a
// negative or non-finite mean.
std::uint64_t sample_poisson(double mean, RngStream& rng);

}  // namespace ksat
