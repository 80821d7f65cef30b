#include "ksat/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ksat/parallel.hpp"

namespace ksat {

void Instance::validate() const {
  if (n_sites < 1) throw std::invalid_argument("instance needs at least one site");
  for (const auto& c : clauses) {
    if (c.sites.size() != c.signs.size()) throw std::invalid_argument("clause arity mismatch");
    for (auto s : c.sites) {
      if (s >= static_cast<std::uint32_t>(n_sites)) throw std::invalid_argument("clause site out of range");
    }
  }
}

Instance sample_instance(const ModelParams& params, int n_sites, RngStream& rng, const ExactLimits& limits) {
  params.validate();
  if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
  const std::uint64_t count = sample_poisson(params.alpha * n_sites, rng);
  if (count > limits.max_clauses) {
    throw CapExceeded("clause count " + std::to_string(count) + " exceeds cap " +
                      std::to_string(limits.max_clauses));
  }
  Instance inst;
  inst.n_sites = n_sites;
  inst.clauses.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    Clause c;
    c.signs = sample_clause_signs(params.p, rng);
    c.sites.resize(static_cast<std::size_t>(params.p));
    for (auto& s : c.sites) s = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(n_sites)));
    inst.clauses.push_back(std::move(c));
  }
  return inst;
}

namespace {

void check_enumerable(const Instance& instance, const ExactLimits& limits) {
  instance.validate();
  if (instance.n_sites > limits.max_sites || instance.n_sites > 62) {
    throw CapExceeded("2^" + std::to_string(instance.n_sites) + " enumeration exceeds cap 2^" +
                      std::to_string(limits.max_sites));
  }
}

// Visits every configuration in Gray-code order as visit(spins, n_violated).
// A clause is violated when every literal matches: sigma_{site_i} == J_i.
// Only clauses touching the flipped spin are updated per step.
template <class Visit>
void enumerate_configurations(const Instance& instance, Visit&& visit) {
  const auto n = static_cast<std::size_t>(instance.n_sites);
  struct Occurrence {
    std::uint32_t clause;
    int sign;
  };
  std::vector<std::vector<Occurrence>> occurrences(n);
  std::vector<int> mismatches(instance.clauses.size(), 0);
  std::vector<int> spins(n, -1);

  int violated = 0;
  for (std::size_t k = 0; k < instance.clauses.size(); ++k) {
    const auto& c = instance.clauses[k];
    for (std::size_t i = 0; i < c.sites.size(); ++i) {
      occurrences[c.sites[i]].push_back({static_cast<std::uint32_t>(k), c.signs[i]});
      if (c.signs[i] != -1) ++mismatches[k];
    }
    if (mismatches[k] == 0) ++violated;
  }

  visit(spins, violated);
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < total; ++t) {
    const auto site = static_cast<std::size_t>(std::countr_zero(t));
    const int before = spins[site];
    for (const auto& occ : occurrences[site]) {
      int& m = mismatches[occ.clause];
      if (before == occ.sign) {
        if (m == 0) --violated;
        ++m;
      } else {
        --m;
        if (m == 0) ++violated;
      }
    }
    spins[site] = -before;
    visit(spins, violated);
  }
}

std::size_t lowest_energy(const std::vector<std::uint64_t>& hist) {
  for (std::size_t e = 0; e < hist.size(); ++e) {
    if (hist[e] != 0) return e;
  }
  return 0;
}

// log Z_N - N log 2 = log(2^{-N} sum_E c_E e^{-beta E}), evaluated around the
// lowest occupied energy so nothing overflows or underflows.
double log_partition_excess(const Instance& instance, double beta, const ExactLimits& limits) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::domain_error("beta must be finite and >= 0");
  const auto hist = energy_histogram(instance, limits);
  const std::size_t e_min = lowest_energy(hist);
  double w = 0.0;
  for (std::size_t e = e_min; e < hist.size(); ++e) {
    if (hist[e] == 0) continue;
    w += static_cast<double>(hist[e]) * std::exp(-beta * static_cast<double>(e - e_min));
  }
  return std::log(std::ldexp(w, -instance.n_sites)) - beta * static_cast<double>(e_min);
}

}  // namespace

std::vector<std::uint64_t> energy_histogram(const Instance& instance, const ExactLimits& limits) {
  check_enumerable(instance, limits);
  std::vector<std::uint64_t> hist(instance.clauses.size() + 1, 0);
  enumerate_configurations(instance, [&](const std::vector<int>&, int e) { ++hist[static_cast<std::size_t>(e)]; });
  return hist;
}

double log_partition(const Instance& instance, double beta, const ExactLimits& limits) {
  const double excess = log_partition_excess(instance, beta, limits);
  return instance.n_sites * std::numbers::ln2 + excess;
}

double free_energy_density(const Instance& instance, double beta, const ExactLimits& limits) {
  return std::numbers::ln2 + log_partition_excess(instance, beta, limits) / instance.n_sites;
}

Estimate free_energy(const ModelParams& params, int n_sites, std::size_t n_disorder, const RngStream& rng,
                     std::vector<InstanceRecord>* records, const ExactLimits& limits) {
  params.validate();
  if (n_disorder < 2) throw std::invalid_argument("n_disorder must be >= 2");
  if (n_sites > limits.max_sites) {
    throw CapExceeded("n_sites " + std::to_string(n_sites) + " exceeds enumeration cap " +
                      std::to_string(limits.max_sites));
  }
  std::vector<double> density(n_disorder);
  std::vector<InstanceRecord> recs(n_disorder);
  parallel_for(n_disorder, [&](std::size_t i) {
    RngStream stream = rng.split(i);
    const Instance inst = sample_instance(params, n_sites, stream, limits);
    const double excess = log_partition_excess(inst, params.beta, limits);
    density[i] = std::numbers::ln2 + excess / n_sites;
    recs[i] = {i, inst.clauses.size(), n_sites * std::numbers::ln2 + excess};
  });
  if (records != nullptr) *records = std::move(recs);
  return estimate_of(density);
}

double GibbsMoments::r12_sq() const {
  double s = 0.0;
  for (double c : pair_corr) s += c * c;
  return s / (static_cast<double>(n_sites) * n_sites);
}

double GibbsMoments::r12_r34() const {
  double s = 0.0;
  for (double m : site_means) s += m * m;
  return s * s / (static_cast<double>(n_sites) * n_sites);
}

GibbsMoments gibbs_moments(const Instance& instance, double beta, const ExactLimits& limits) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::domain_error("beta must be finite and >= 0");
  const auto hist = energy_histogram(instance, limits);
  const std::size_t e_min = lowest_energy(hist);
  std::vector<double> weight(hist.size(), 0.0);
  for (std::size_t e = e_min; e < hist.size(); ++e) weight[e] = std::exp(-beta * static_cast<double>(e - e_min));

  const auto n = static_cast<std::size_t>(instance.n_sites);
  double z = 0.0;
  std::vector<double> first(n, 0.0);
  std::vector<double> second(n * n, 0.0);
  enumerate_configurations(instance, [&](const std::vector<int>& spins, int e) {
    const double w = weight[static_cast<std::size_t>(e)];
    z += w;
    for (std::size_t i = 0; i < n; ++i) {
      const double wi = w * spins[i];
      first[i] += wi;
      double* row = &second[i * n];
      for (std::size_t j = i + 1; j < n; ++j) row[j] += wi * spins[j];
    }
  });

  GibbsMoments g;
  g.n_sites = instance.n_sites;
  g.site_means.resize(n);
  g.pair_corr.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    g.site_means[i] = std::clamp(first[i] / z, -1.0, 1.0);
    g.pair_corr[i * n + i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double c = std::clamp(second[i * n + j] / z, -1.0, 1.0);
      g.pair_corr[i * n + j] = c;
      g.pair_corr[j * n + i] = c;
    }
  }
  return g;
}

OverlapMoments overlap_moment_gap(const ModelParams& params, int n_sites, std::size_t n_disorder,
                                  const RngStream& rng, const ExactLimits& limits) {
  params.validate();
  if (n_disorder < 2) throw std::invalid_argument("n_disorder must be >= 2");
  if (n_sites > limits.max_sites) {
    throw CapExceeded("n_sites " + std::to_string(n_sites) + " exceeds enumeration cap " +
                      std::to_string(limits.max_sites));
  }
  std::vector<double> sq(n_disorder), fact(n_disorder), gap(n_disorder);
  parallel_for(n_disorder, [&](std::size_t i) {
    RngStream stream = rng.split(i);
    const Instance inst = sample_instance(params, n_sites, stream, limits);
    const GibbsMoments g = gibbs_moments(inst, params.beta, limits);
    sq[i] = g.r12_sq();
    fact[i] = g.r12_r34();
    gap[i] = sq[i] - fact[i];
  });
  return {estimate_of(sq), estimate_of(fact), estimate_of(gap)};
}

}  // namespace ksat
