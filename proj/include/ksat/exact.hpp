#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ksat/model.hpp"
#include "ksat/rng.hpp"
#include "ksat/stats.hpp"

namespace ksat {

// Thrown when a finite-size computation would exceed a configured cap.
class CapExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Clause {
  ClauseSigns signs;
  std::vector<std::uint32_t> sites;  // may repeat
};

// One disorder realization of the K-sat Hamiltonian on n_sites spins.
struct Instance {
  int n_sites = 0;
  std::vector<Clause> clauses;

  // Throws std::invalid_argument on out-of-range sites or arity mismatch.
  void validate() const;
};

struct ExactLimits {
  std::size_t max_clauses = 1'000'000;
  int max_sites = 24;
};

// Clause count ~ Poisson(alpha * n_sites); each clause draws p sites uniformly
// with replacement and fresh signs.
Instance sample_instance(const ModelParams& params, int n_sites, RngStream& rng,
                         const ExactLimits& limits = {});

// Number of configurations in {-1,1}^N violating exactly E clauses, for
// E = 0..clause count. Computed by Gray-code enumeration.
std::vector<std::uint64_t> energy_histogram(const Instance& instance, const ExactLimits& limits = {});

// log Z_N = log sum_sigma exp(-beta * #violated(sigma)), by full enumeration.
double log_partition(const Instance& instance, double beta, const ExactLimits& limits = {});

// (1/N) log Z_N, evaluated as log 2 + (log Z_N - N log 2) / N so that the
// degenerate cases return log 2 bit-exactly.
double free_energy_density(const Instance& instance, double beta, const ExactLimits& limits = {});

struct InstanceRecord {
  std::size_t id = 0;
  std::size_t n_clauses = 0;
  double log_z = 0.0;
};

// Disorder average of (1/N) log Z_N over n_disorder instances. Instance i uses
// rng.split(i). When records is non-null it receives one entry per instance.
Estimate free_energy(const ModelParams& params, int n_sites, std::size_t n_disorder, const RngStream& rng,
                     std::vector<InstanceRecord>* records = nullptr, const ExactLimits& limits = {});

// Exact Gibbs expectations <sigma_i> and <sigma_i sigma_j>.
struct GibbsMoments {
  int n_sites = 0;
  std::vector<double> site_means;
  std::vector<double> pair_corr;  // row-major n_sites x n_sites

  double corr(int i, int j) const { return pair_corr[static_cast<std::size_t>(i) * n_sites + j]; }
  // (1/N^2) sum_ij <sigma_i sigma_j>^2
  double r12_sq() const;
  // (1/N^2) sum_ij <sigma_i>^2 <sigma_j>^2
  double r12_r34() const;
};

GibbsMoments gibbs_moments(const Instance& instance, double beta, const ExactLimits& limits = {});

struct OverlapMoments {
  Estimate r12_sq;
  Estimate r12_r34;
  Estimate gap;  // paired per instance
};

OverlapMoments overlap_moment_gap(const ModelParams& params, int n_sites, std::size_t n_disorder,
                                  const RngStream& rng, const ExactLimits& limits = {});

}  // namespace ksat
