#include "ksat/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ksat/metrics.hpp"
#include "ksat/parallel.hpp"

namespace ksat {

namespace {

double finite_or_max(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::max(); }

}  // namespace

RegionReport region_check(const ModelParams& params) {
  params.validate();
  const double p = params.p;
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double connectivity = (p - 1.0) * p * alpha;

  RegionReport r;
  r.lhs_small_alpha = connectivity;
  r.pass_small_alpha = connectivity < 1.0;

  r.lhs_13 = std::min(4.0 * beta, 1.0) * connectivity;
  r.pass_13 = r.lhs_13 < 1.0;

  r.lhs_14 = finite_or_max(0.5 * std::expm1(beta) * connectivity);
  r.pass_14 = r.lhs_14 < 1.0;

  if (connectivity == 0.0 || beta == 0.0) {
    r.lhs_15 = 0.0;
    r.log_lhs_15 = -std::numeric_limits<double>::infinity();
    r.pass_15 = true;
  } else {
    const double log_lhs = std::log(connectivity * beta) + 2.0 * beta + alpha * p * std::expm1(2.0 * beta);
    r.log_lhs_15 = finite_or_max(log_lhs);
    r.lhs_15 = log_lhs > 0.0 ? finite_or_max(std::exp(log_lhs)) : std::exp(log_lhs);
    r.pass_15 = log_lhs < 0.0;
  }
  return r;
}

Lemma6Result lemma6_scan(const Lemma6Grid& grid) {
  if (grid.p_min < 2 || grid.p_max < grid.p_min) throw std::invalid_argument("bad p range");
  if (!(grid.alpha_min > 0.0) || !(grid.alpha_max >= grid.alpha_min) || grid.n_alpha < 1) {
    throw std::invalid_argument("bad alpha range");
  }
  if (!(grid.beta_step > 0.0) || !(grid.beta_max >= grid.beta_step)) throw std::invalid_argument("bad beta range");

  const auto n_beta = static_cast<int>(std::floor(grid.beta_max / grid.beta_step + 1e-9));
  const double log_lo = std::log(grid.alpha_min);
  const double log_hi = std::log(grid.alpha_max);

  Lemma6Result out;
  for (int p = grid.p_min; p <= grid.p_max; ++p) {
    for (int a = 0; a < grid.n_alpha; ++a) {
      const double t = grid.n_alpha == 1 ? 0.0 : static_cast<double>(a) / (grid.n_alpha - 1);
      const double alpha = std::exp(log_lo + t * (log_hi - log_lo));
      for (int b = 1; b <= n_beta; ++b) {
        ModelParams params{p, alpha, b * grid.beta_step, 0};
        const RegionReport r = region_check(params);
        ++out.points;
        if (!r.pass_13) continue;
        ++out.points_in_13;
        if (!r.pass_small_alpha && !r.pass_15) out.violations.push_back({p, alpha, params.beta, r});
      }
    }
  }
  return out;
}

LipschitzResult lipschitz_test(const ModelParams& params, int r_max, std::size_t n_trials, const RngStream& rng) {
  params.validate();
  if (r_max < 0) throw std::invalid_argument("r_max must be >= 0");
  if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");

  const int p = params.p;
  const double lipschitz = 0.5 * std::expm1(params.beta);
  constexpr double kSkipped = -1.0;
  std::vector<double> ratio(n_trials);

  parallel_for(n_trials, [&](std::size_t t) {
    RngStream s = rng.split(t);
    const auto r = static_cast<std::size_t>(s.below(static_cast<std::uint64_t>(r_max) + 1));
    CavityInput a{p, {}, {}};
    for (std::size_t k = 0; k < r; ++k) a.signs.push_back(sample_clause_signs(p, s));
    a.sigma.resize(r * static_cast<std::size_t>(p - 1));
    for (auto& x : a.sigma) x = s.uniform(-1.0, 1.0);

    CavityInput b = a;
    switch (t % 3) {
      case 0:
        for (auto& x : b.sigma) x = s.uniform(-1.0, 1.0);
        break;
      case 1:
        for (auto& x : b.sigma) x = std::clamp(x + s.uniform(-1e-3, 1e-3), -1.0, 1.0);
        break;
      default:
        if (!b.sigma.empty()) b.sigma[s.below(b.sigma.size())] = s.uniform(-1.0, 1.0);
        break;
    }

    double dist = 0.0;
    for (std::size_t i = 0; i < a.sigma.size(); ++i) dist += std::abs(a.sigma[i] - b.sigma[i]);
    if (dist == 0.0) {
      ratio[t] = kSkipped;
      return;
    }
    const double diff = std::abs(cavity_map(a, params.beta) - cavity_map(b, params.beta));
    if (lipschitz == 0.0) {
      ratio[t] = diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      return;
    }
    ratio[t] = diff / (lipschitz * dist);
  });

  LipschitzResult out;
  out.trials = n_trials;
  for (double x : ratio) {
    if (x == kSkipped) {
      ++out.skipped;
      continue;
    }
    out.max_ratio = std::max(out.max_ratio, x);
    if (x > 1.0 + kRatioTolerance) ++out.violations;
  }
  return out;
}

ContractionResult contraction_test(const ModelParams& params, std::size_t m, std::size_t n_pairs, InitPreset init_p,
                                   InitPreset init_q, const RngStream& rng) {
  params.validate();
  if (m < 10'000) throw std::invalid_argument("contraction_test needs M >= 10^4");
  if (n_pairs < 1) throw std::invalid_argument("n_pairs must be >= 1");

  ContractionResult out;
  out.bound = region_check(params).lhs_14;
  out.slack = 5.0 / std::sqrt(static_cast<double>(m));
  const double min_distance = 10.0 * std::numeric_limits<double>::epsilon();

  for (std::size_t i = 0; i < n_pairs; ++i) {
    Population a = make_population(init_p, m, rng.split("P").split(i));
    Population b = make_population(init_q, m, rng.split("Q").split(i));
    std::sort(a.members.begin(), a.members.end());
    std::sort(b.members.begin(), b.members.end());
    const double before = wasserstein_1d(a, b).value;
    if (before < min_distance) {
      ++out.skipped;
      continue;
    }
    const RngStream step = rng.split("step").split(i);
    const Population ta = population_step(a, params, step);
    const Population tb = population_step(b, params, step);
    out.ratios.push_back(wasserstein_1d(ta, tb).value / before);
  }

  if (!out.ratios.empty()) {
    double sum = 0.0;
    for (double x : out.ratios) sum += x;
    out.mean_ratio = sum / static_cast<double>(out.ratios.size());
  }
  out.within_bound = out.mean_ratio <= out.bound + out.slack;
  return out;
}

}  // namespace ksat
