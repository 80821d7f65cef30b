#pragma once

#include <cstddef>
#include <span>

namespace ksat {

// Monte Carlo scalar: sample mean with its standard error.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n_samples)
  std::size_t n_samples = 0;
};

// Welford accumulator. Feeding identical values keeps the mean bit-exact and
// the variance exactly zero.
class RunningStats {
public:
  void push(double x);
  std::size_t count() const { return n_; }
  double mean() const { return mean_; }
  // Unbiased sample variance; 0 for fewer than two samples.
  double variance() const;
  Estimate estimate() const;

private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

Estimate estimate_of(std::span<const double> samples);

// Standard error of a sum/difference of independent estimates.
double combined_error(double a, double b);

}  // namespace ksat
