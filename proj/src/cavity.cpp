#include "ksat/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ksat/metrics.hpp"
#include "ksat/parallel.hpp"

namespace ksat {

void Population::validate() const {
  if (members.empty()) throw std::invalid_argument("population must be nonempty");
  for (double x : members) {
    if (!(std::abs(x) <= 1.0)) throw std::invalid_argument("population member outside [-1, 1]");
  }
}

std::string_view to_string(InitPreset preset) {
  switch (preset) {
    case InitPreset::Zeros: return "zeros";
    case InitPreset::PlusOne: return "plus";
    case InitPreset::MinusOne: return "minus";
    case InitPreset::Uniform: return "uniform";
  }
  return "zeros";
}

std::optional<InitPreset> parse_init_preset(std::string_view name) {
  if (name == "zeros") return InitPreset::Zeros;
  if (name == "plus") return InitPreset::PlusOne;
  if (name == "minus") return InitPreset::MinusOne;
  if (name == "uniform") return InitPreset::Uniform;
  return std::nullopt;
}

Population make_population(InitPreset preset, std::size_t m, const RngStream& rng) {
  if (m == 0) throw std::invalid_argument("population size must be >= 1");
  Population pop;
  switch (preset) {
    case InitPreset::Zeros: pop.members.assign(m, 0.0); break;
    case InitPreset::PlusOne: pop.members.assign(m, 1.0); break;
    case InitPreset::MinusOne: pop.members.assign(m, -1.0); break;
    case InitPreset::Uniform: {
      pop.members.resize(m);
      RngStream s = rng.split("init-uniform");
      for (auto& x : pop.members) x = s.uniform(-1.0, 1.0);
      break;
    }
  }
  return pop;
}

void CavityInput::validate() const {
  if (p < 2) throw std::invalid_argument("p must be >= 2");
  if (sigma.size() != signs.size() * static_cast<std::size_t>(p - 1)) {
    throw std::invalid_argument("sigma must hold (p-1) * r values");
  }
  for (const auto& s : signs) {
    if (s.size() != static_cast<std::size_t>(p)) throw std::invalid_argument("clause arity differs from p");
  }
}

namespace {

// Accumulates theta_k into A(J_{p,k}); the clause contributes nothing to
// A(-J_{p,k}) because its (1 + J_p eps)/2 factor vanishes there.
struct FieldAccumulator {
  double plus = 0.0;
  double minus = 0.0;

  void add(double theta, int eps_sign) {
    if (eps_sign > 0) plus += theta;
    else minus += theta;
  }
  double magnetization() const { return std::tanh(0.5 * (plus - minus)); }
};

}  // namespace

double cavity_map(const CavityInput& input, double beta) {
  input.validate();
  const ClauseWeight weight(beta);
  const auto q_len = static_cast<std::size_t>(input.p - 1);
  FieldAccumulator acc;
  for (std::size_t k = 0; k < input.r(); ++k) {
    const auto& j = input.signs[k];
    double q = 1.0;
    for (std::size_t i = 0; i < q_len; ++i) q *= 0.5 * (1.0 + j[i] * checked_spin(input.at(i, k)));
    acc.add(weight.log_weight(q), j[q_len]);
  }
  return acc.magnetization();
}

Population population_step(const Population& old, const ModelParams& params, const RngStream& rng) {
  params.validate();
  old.validate();
  const std::size_t m = old.size();
  const double mean_clauses = params.alpha * params.p;
  const ClauseWeight weight(params.beta);
  const int q_len = params.p - 1;

  Population next;
  next.generation = old.generation + 1;
  next.members.resize(m);
  parallel_for(m, [&](std::size_t idx) {
    RngStream s = rng.split(idx);
    const std::uint64_t r = sample_poisson(mean_clauses, s);
    FieldAccumulator acc;
    for (std::uint64_t k = 0; k < r; ++k) {
      double q = 1.0;
      for (int i = 0; i < q_len; ++i) {
        const int j = s.sign();
        q *= 0.5 * (1.0 + j * old.members[s.below(m)]);
      }
      acc.add(weight.log_weight(q), s.sign());
    }
    next.members[idx] = acc.magnetization();
  });
  return next;
}

FixedPointResult solve_fixed_point(const ModelParams& params, const FixedPointOptions& options,
                                   const RngStream& rng) {
  params.validate();
  if (options.m < 1000) throw std::invalid_argument("fixed-point population size must be >= 1000");
  if (!(options.tol > 0.0)) throw std::invalid_argument("tol must be > 0");
  if (options.max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

  FixedPointResult result;
  result.population = make_population(options.init, options.m, rng);
  const RngStream steps = rng.split("step");
  int below = 0;
  for (int it = 0; it < options.max_iters; ++it) {
    Population next = population_step(result.population, params, steps.split(static_cast<std::uint64_t>(it)));
    const double d = wasserstein_1d(result.population, next).value;
    result.trace.push_back(d);
    result.population = std::move(next);
    result.iterations = it + 1;
    below = d < options.tol ? below + 1 : 0;
    if (d == 0.0 || below >= options.patience) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace ksat
