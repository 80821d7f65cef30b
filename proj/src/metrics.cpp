#include "ksat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ksat/stats.hpp"

namespace ksat {

DistanceResult wasserstein_1d(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("wasserstein_1d needs nonempty samples");
  if (a.size() != b.size()) throw std::invalid_argument("wasserstein_1d needs equal-size samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  double total = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) total += std::abs(sa[i] - sb[i]);
  return {total / static_cast<double>(sa.size()), a.size(), b.size()};
}

DistanceResult wasserstein_1d(const Population& a, const Population& b) {
  return wasserstein_1d(std::span<const double>(a.members), std::span<const double>(b.members));
}

double quantile_sorted(std::span<const double> sorted, double level) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  const double h = level * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("summarize needs a nonempty sample");
  RunningStats stats;
  for (double x : values) stats.push(x);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  Summary s;
  s.mean = stats.mean();
  s.sd = std::sqrt(stats.variance());
  for (std::size_t i = 0; i < kSummaryLevels.size(); ++i) s.quantiles[i] = quantile_sorted(sorted, kSummaryLevels[i]);
  return s;
}

Summary summarize(const Population& pop) { return summarize(std::span<const double>(pop.members)); }

}  // namespace ksat
