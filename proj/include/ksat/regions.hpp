#pragma once

#include <cstddef>
#include <vector>

#include "ksat/cavity.hpp"
#include "ksat/model.hpp"
#include "ksat/rng.hpp"

namespace ksat {

// Left-hand sides of the parameter-region conditions, each compared to 1:
//   high temperature    min(4 beta, 1) (p-1) p alpha
//   contraction         (1/2) (e^beta - 1) (p-1) p alpha
//   small-beta purity   (p-1) p alpha beta exp(2 beta + alpha p (e^{2 beta} - 1))
//   small connectivity  (p-1) p alpha
struct RegionReport {
  double lhs_13 = 0.0;
  bool pass_13 = true;
  double lhs_14 = 0.0;
  bool pass_14 = true;
  double lhs_15 = 0.0;
  double log_lhs_15 = 0.0;  // -inf when lhs_15 = 0
  bool pass_15 = true;
  double lhs_small_alpha = 0.0;
  bool pass_small_alpha = true;
};

// lhs_15 is formed in log space; when it overflows it saturates at the
// largest finite double and pass_15 is false.
RegionReport region_check(const ModelParams& params);

struct Lemma6Grid {
  int p_min = 2;
  int p_max = 6;
  double alpha_min = 1e-3;
  double alpha_max = 10.0;
  int n_alpha = 200;  // log-spaced, endpoints included
  double beta_step = 0.01;
  double beta_max = 4.0;  // beta runs over beta_step, 2 beta_step, ..., <= beta_max
};

struct Lemma6Point {
  int p = 0;
  double alpha = 0.0;
  double beta = 0.0;
  RegionReport report;
};

struct Lemma6Result {
  std::size_t points = 0;
  std::size_t points_in_13 = 0;
  std::vector<Lemma6Point> violations;  // pass_13 holds but neither pass_small_alpha nor pass_15
};

// Checks on a grid that the high-temperature region lies inside the union of
// the small-connectivity region and the small-beta purity region.
Lemma6Result lemma6_scan(const Lemma6Grid& grid = {});

struct LipschitzResult {
  double max_ratio = 0.0;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  std::size_t trials = 0;
};

inline constexpr double kRatioTolerance = 1e-9;

// Random trials of |T_r(s) - T_r(s')| / ((e^beta - 1)/2 * sum |s - s'|) with
// r uniform in [0, r_max] and shared clause signs. Pairs are drawn three
// ways in rotation: independent uniform, a small perturbation of s, and s
// with one coordinate replaced. A ratio above 1 + kRatioTolerance counts as a
// violation. Trials with s = s' are skipped. Trial t uses rng.split(t).
LipschitzResult lipschitz_test(const ModelParams& params, int r_max, std::size_t n_trials, const RngStream& rng);

struct ContractionResult {
  std::vector<double> ratios;
  std::size_t skipped = 0;
  double mean_ratio = 0.0;
  double bound = 0.0;  // lhs_14
  double slack = 0.0;  // 5 / sqrt(M)
  bool within_bound = true;
};

// For each pair i: builds P (init_p) and Q (init_q), sorts both so that
// equal indices form the optimal coupling, advances both with one
// population_step sharing rng.split("step").split(i), and records
// W1(T P, T Q) / W1(P, Q). Pairs with W1(P, Q) < 10 eps are skipped.
ContractionResult contraction_test(const ModelParams& params, std::size_t m, std::size_t n_pairs, InitPreset init_p,
                                   InitPreset init_q, const RngStream& rng);

}  // namespace ksat
