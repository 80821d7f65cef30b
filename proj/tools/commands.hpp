#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "ksat/cavity.hpp"
#include "ksat/model.hpp"

namespace ksat::cli {

enum ExitCode : int {
  kOk = 0,
  kCrash = 1,
  kInvariantViolation = 2,
  kNotConverged = 3,
  kInputError = 4,
};

// Everything a run depends on. Each command reads the knobs it needs; the
// whole struct is echoed into every report so a run can be replayed from it.
struct RunConfig {
  ModelParams params{3, 0.05, 1.0, 1};
  unsigned threads = 0;

  // population dynamics
  std::size_t population = 100'000;
  int max_iters = 200;
  double tol = 1e-2;
  InitPreset init = InitPreset::Zeros;

  // rs functional
  std::size_t n_mc = 1'000'000;

  // exact enumeration
  std::vector<int> sites{10, 12, 14};
  std::size_t n_disorder = 200;
  int max_sites = 24;
  double finite_size_c = 1.0;

  // verifiers
  int r_max = 8;
  std::size_t trials = 100'000;
  std::size_t pairs = 20;
  InitPreset init_p = InitPreset::PlusOne;
  InitPreset init_q = InitPreset::MinusOne;

  // regions grid mode
  std::vector<int> grid_p;
  std::vector<double> grid_alpha;
  std::vector<double> grid_beta;

  // optional outputs / inputs
  std::string population_out;
  std::string trace_out;
  std::string records_out;
  std::string ratios_out;
  std::string population_in;
};

nlohmann::json to_json(const RunConfig& config);

struct CommandResult {
  nlohmann::json report;
  int exit_code = kOk;
};

CommandResult run_regions(const RunConfig& config);
// Streams one CSV row per grid point; returns the number of rows written.
std::size_t run_regions_grid(const RunConfig& config, std::ostream& csv);
CommandResult run_lemma6(const RunConfig& config);
CommandResult run_fixedpoint(const RunConfig& config);
CommandResult run_rs(const RunConfig& config);
CommandResult run_exact(const RunConfig& config);
CommandResult run_overlap(const RunConfig& config);
CommandResult run_lipschitz(const RunConfig& config);
CommandResult run_contraction(const RunConfig& config);
// Fixed point, then the functional, then the exact free energy for every
// N in config.sites. Errors after partial progress are reported alongside
// the results gathered so far.
CommandResult run_compare(const RunConfig& config);

}  // namespace ksat::cli
