#include "ksat/stats.hpp"

#include <cmath>

namespace ksat {

void RunningStats::push(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

double RunningStats::variance() const {
  if (n_ < 2) return 0.0;
  return m2_ / static_cast<double>(n_ - 1);
}

Estimate RunningStats::estimate() const {
  const double se = n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  return {mean_, se, n_};
}

Estimate estimate_of(std::span<const double> samples) {
  RunningStats s;
  for (double x : samples) s.push(x);
  return s.estimate();
}

double combined_error(double a, double b) { return std::hypot(a, b); }

}  // namespace ksat
