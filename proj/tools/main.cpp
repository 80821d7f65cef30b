// ksat-rs: replica-symmetric solution of the diluted random K-sat model.
//
// One JSON document goes to stdout (CSV rows for `regions` grid mode);
// progress goes to stderr. Exit codes: 0 ok, 2 invariant violation,
// 3 non-convergence, 4 input error.

#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "ksat/exact.hpp"
#include "ksat/parallel.hpp"

using namespace ksat;
using namespace ksat::cli;

int main(int argc, char** argv) {
  CLI::App app{"Replica-symmetric solution of the diluted random K-sat model"};
  app.set_config("--config", "", "Config file of key = value lines; explicit flags win");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  const std::vector<std::string> presets{"zeros", "plus", "minus", "uniform"};
  std::string init = "zeros", init_p = "plus", init_q = "minus";

  app.add_option("--p", cfg.params.p, "Clause arity (>= 2)")->capture_default_str();
  app.add_option("--alpha", cfg.params.alpha, "Connectivity")->capture_default_str();
  app.add_option("--beta", cfg.params.beta, "Inverse temperature")->capture_default_str();
  app.add_option("--seed", cfg.params.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker thread cap (0 = all cores)")->capture_default_str();

  app.add_option("--M,--population", cfg.population, "Population size")->capture_default_str();
  app.add_option("--max-iters", cfg.max_iters, "Fixed-point iteration cap")->capture_default_str();
  app.add_option("--tol", cfg.tol, "W1 step tolerance")->capture_default_str();
  app.add_option("--init", init, "Initial population: zeros|plus|minus|uniform")
      ->check(CLI::IsMember(presets))->capture_default_str();
  app.add_option("--n-mc", cfg.n_mc, "Monte Carlo trials per rs term")->capture_default_str();

  app.add_option("--n", cfg.sites, "System size(s) N")->delimiter(',');
  app.add_option("--n-disorder", cfg.n_disorder, "Disorder samples per N")->capture_default_str();
  app.add_option("--max-sites", cfg.max_sites, "Enumeration cap on N")->capture_default_str();
  app.add_option("--finite-size-c", cfg.finite_size_c, "C in the C/N finite-size slack")->capture_default_str();

  app.add_option("--r-max", cfg.r_max, "Largest clause count in Lipschitz trials")->capture_default_str();
  app.add_option("--trials", cfg.trials, "Lipschitz trials")->capture_default_str();
  app.add_option("--pairs", cfg.pairs, "Contraction population pairs")->capture_default_str();
  app.add_option("--init-p", init_p, "Contraction population P preset")
      ->check(CLI::IsMember(presets))->capture_default_str();
  app.add_option("--init-q", init_q, "Contraction population Q preset")
      ->check(CLI::IsMember(presets))->capture_default_str();

  app.add_option("--grid-p", cfg.grid_p, "Grid mode: p values")->delimiter(',');
  app.add_option("--grid-alpha", cfg.grid_alpha, "Grid mode: alpha values")->delimiter(',');
  app.add_option("--grid-beta", cfg.grid_beta, "Grid mode: beta values")->delimiter(',');

  app.add_option("--population-out", cfg.population_out, "Write the final population snapshot here");
  app.add_option("--trace-out", cfg.trace_out, "Write the W1 step trace CSV here");
  app.add_option("--records-out", cfg.records_out, "Write per-instance log Z records CSV here");
  app.add_option("--ratios-out", cfg.ratios_out, "Write contraction ratios CSV here");
  app.add_option("--population-in", cfg.population_in, "Population snapshot for `rs`");

  using Runner = std::function<CommandResult(const RunConfig&)>;
  const std::map<std::string, std::pair<std::string, Runner>> commands{
      {"regions", {"Evaluate the parameter-region conditions", run_regions}},
      {"lemma6", {"Scan the default grid for region-inclusion counterexamples", run_lemma6}},
      {"fixedpoint", {"Solve T(zeta) = zeta by population dynamics", run_fixedpoint}},
      {"rs", {"Evaluate the replica-symmetric functional", run_rs}},
      {"exact", {"Exact finite-size free energy by enumeration", run_exact}},
      {"overlap", {"Exact overlap moments E<R12^2> and E<R12 R34>", run_overlap}},
      {"lipschitz", {"Randomized check of the cavity-map Lipschitz bound", run_lipschitz}},
      {"contraction", {"Coupled W1 contraction check of the distributional map", run_contraction}},
      {"compare", {"Exact free energy versus the rs functional at the fixed point", run_compare}},
  };
  for (const auto& [name, entry] : commands) app.add_subcommand(name, entry.first);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  cfg.init = *parse_init_preset(init);
  cfg.init_p = *parse_init_preset(init_p);
  cfg.init_q = *parse_init_preset(init_q);
  set_max_threads(cfg.threads);
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    if (name == "regions" && !(cfg.grid_p.empty() && cfg.grid_alpha.empty() && cfg.grid_beta.empty())) {
      const std::size_t rows = run_regions_grid(cfg, std::cout);
      std::cerr << "[ksat-rs] " << rows << " grid rows" << std::endl;
      return kOk;
    }
    cfg.params.validate();
    const CommandResult result = commands.at(name).second(cfg);
    std::cout << result.report.dump(2) << std::endl;
    return result.exit_code;
  } catch (const std::invalid_argument& e) {
    std::cout << nlohmann::json{{"command", name}, {"error", e.what()}}.dump(2) << std::endl;
    return kInputError;
  } catch (const std::domain_error& e) {
    std::cout << nlohmann::json{{"command", name}, {"error", e.what()}}.dump(2) << std::endl;
    return kInputError;
  } catch (const CapExceeded& e) {
    std::cout << nlohmann::json{{"command", name}, {"error", e.what()}}.dump(2) << std::endl;
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "[ksat-rs] fatal: " << e.what() << std::endl;
    return kCrash;
  }
}
