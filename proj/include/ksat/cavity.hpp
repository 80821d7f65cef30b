#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ksat/model.hpp"
#include "ksat/rng.hpp"

namespace ksat {

// Empirical approximation of a law on [-1, 1] by M samples.
struct Population {
  std::vector<double> members;
  int generation = 0;

  std::size_t size() const { return members.size(); }
  // Throws std::invalid_argument if empty or a member lies outside [-1, 1].
  void validate() const;
};

enum class InitPreset { Zeros, PlusOne, MinusOne, Uniform };

std::string_view to_string(InitPreset preset);
std::optional<InitPreset> parse_init_preset(std::string_view name);

// Builds a generation-0 population. Only Uniform consumes randomness.
Population make_population(InitPreset preset, std::size_t m, const RngStream& rng);

// Inputs of the cavity map for r clauses attached to a new spin epsilon.
// Clause k has signs[k] (arity p, the last sign multiplies epsilon) and
// p-1 magnetizations sigma[k*(p-1) + j], j < p-1.
struct CavityInput {
  int p = 3;
  std::vector<ClauseSigns> signs;
  std::vector<double> sigma;

  std::size_t r() const { return signs.size(); }
  double& at(std::size_t j, std::size_t k) { return sigma[k * static_cast<std::size_t>(p - 1) + j]; }
  double at(std::size_t j, std::size_t k) const { return sigma[k * static_cast<std::size_t>(p - 1) + j]; }
  // Throws std::invalid_argument on inconsistent dimensions or arity.
  void validate() const;
};

// Magnetization of epsilon under weight exp(A(eps)), A(eps) = sum_k theta_k(sigma_.k, eps):
//   Av eps e^{A(eps)} / Av e^{A(eps)} = tanh((A(+1) - A(-1)) / 2).
// Returns 0 for r = 0.
double cavity_map(const CavityInput& input, double beta);

// One application of the distributional map to a population. Member m of the
// new generation uses rng.split(m): r ~ Poisson(alpha p), fresh signs for each
// clause and (p-1) r members drawn uniformly with replacement from `old`.
// The draws never depend on member values, so two populations of equal size
// stepped with the same rng are coupled index by index.
Population population_step(const Population& old, const ModelParams& params, const RngStream& rng);

struct FixedPointOptions {
  std::size_t m = 100'000;
  int max_iters = 200;
  double tol = 1e-2;
  InitPreset init = InitPreset::Zeros;
  int patience = 3;  // consecutive sub-tol steps required
};

struct FixedPointResult {
  Population population;
  std::vector<double> trace;  // W1 between consecutive generations
  bool converged = false;
  int iterations = 0;
};

// Iterates population_step until the W1 step distance stays below tol for
// `patience` consecutive iterations, or a step leaves the population exactly
// unchanged, or max_iters is reached. Step g uses rng.split("step").split(g).
FixedPointResult solve_fixed_point(const ModelParams& params, const FixedPointOptions& options,
                                   const RngStream& rng);

}  // namespace ksat
