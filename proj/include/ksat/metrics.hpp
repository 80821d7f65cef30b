#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ksat/cavity.hpp"

namespace ksat {

struct DistanceResult {
  double value = 0.0;
  std::size_t n_a = 0;
  std::size_t n_b = 0;
};

// Exact W1 between two equal-size empirical measures on the line: the mean
// absolute difference of the sorted samples. Throws std::invalid_argument on
// empty input or a size mismatch.
DistanceResult wasserstein_1d(std::span<const double> a, std::span<const double> b);
DistanceResult wasserstein_1d(const Population& a, const Population& b);

inline constexpr std::array<double, 7> kSummaryLevels{0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99};

struct Summary {
  double mean = 0.0;
  double sd = 0.0;  // sample sd (n - 1); 0 for a single member
  std::array<double, kSummaryLevels.size()> quantiles{};
};

// Quantile by linear interpolation between order statistics at position
// level * (n - 1). `sorted` must be ascending and nonempty.
double quantile_sorted(std::span<const double> sorted, double level);

Summary summarize(std::span<const double> values);
Summary summarize(const Population& pop);

}  // namespace ksat
