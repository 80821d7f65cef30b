#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>
#include <stdexcept>

#include "ksat/exact.hpp"
#include "ksat/io.hpp"
#include "ksat/metrics.hpp"
#include "ksat/regions.hpp"
#include "ksat/rs.hpp"

namespace ksat::cli {

using nlohmann::json;

namespace {

void progress(const std::string& msg) { std::cerr << "[ksat-rs] " << msg << std::endl; }

json to_json(const Estimate& e) {
  return {{"value", e.value}, {"std_error", e.std_error}, {"n_samples", e.n_samples}};
}

json to_json(const RegionReport& r) {
  return {{"lhs_13", r.lhs_13},
          {"pass_13", r.pass_13},
          {"lhs_14", r.lhs_14},
          {"pass_14", r.pass_14},
          {"lhs_15", r.lhs_15},
          {"pass_15", r.pass_15},
          {"lhs_small_alpha", r.lhs_small_alpha},
          {"pass_small_alpha", r.pass_small_alpha}};
}

json to_json(const Summary& s) {
  json q = json::object();
  for (std::size_t i = 0; i < kSummaryLevels.size(); ++i) {
    q[std::to_string(static_cast<int>(std::lround(kSummaryLevels[i] * 100)))] = s.quantiles[i];
  }
  return {{"mean", s.mean}, {"sd", s.sd}, {"quantiles", q}};
}

json to_json(const RsBreakdown& b) {
  return {{"log2_term", b.log2_term},
          {"cavity_term", to_json(b.cavity_term)},
          {"correction_term", to_json(b.correction_term)},
          {"total", b.total.value},
          {"std_error", b.total.std_error}};
}

ExactLimits limits_of(const RunConfig& config) {
  ExactLimits l;
  l.max_sites = config.max_sites;
  return l;
}

// Streams shared between commands so that, for one seed, `compare` and the
// individual commands see the same randomness.
RngStream fixedpoint_stream(const RunConfig& c) { return c.params.stream().split("fixedpoint"); }
RngStream rs_stream(const RunConfig& c) { return c.params.stream().split("rs"); }
RngStream exact_stream(const RunConfig& c, int n) {
  return c.params.stream().split("exact").split(static_cast<std::uint64_t>(n));
}
RngStream overlap_stream(const RunConfig& c, int n) {
  return c.params.stream().split("overlap").split(static_cast<std::uint64_t>(n));
}

FixedPointOptions fixedpoint_options(const RunConfig& config) {
  FixedPointOptions o;
  o.m = config.population;
  o.max_iters = config.max_iters;
  o.tol = config.tol;
  o.init = config.init;
  return o;
}

json fixedpoint_json(const FixedPointResult& fp) {
  return {{"converged", fp.converged},
          {"iterations", fp.iterations},
          {"final_distance", fp.trace.empty() ? 0.0 : fp.trace.back()},
          {"summary", to_json(summarize(fp.population))}};
}

json base_report(const std::string& command, const RunConfig& config) {
  return {{"command", command}, {"config", to_json(config)}};
}

}  // namespace

nlohmann::json to_json(const RunConfig& c) {
  return {{"p", c.params.p},
          {"alpha", c.params.alpha},
          {"beta", c.params.beta},
          {"seed", c.params.seed},
          {"threads", c.threads},
          {"M", c.population},
          {"max_iters", c.max_iters},
          {"tol", c.tol},
          {"init", std::string(to_string(c.init))},
          {"n_mc", c.n_mc},
          {"n", c.sites},
          {"n_disorder", c.n_disorder},
          {"max_sites", c.max_sites},
          {"finite_size_c", c.finite_size_c},
          {"r_max", c.r_max},
          {"trials", c.trials},
          {"pairs", c.pairs},
          {"init_p", std::string(to_string(c.init_p))},
          {"init_q", std::string(to_string(c.init_q))},
          {"grid_p", c.grid_p},
          {"grid_alpha", c.grid_alpha},
          {"grid_beta", c.grid_beta},
          {"population_out", c.population_out},
          {"trace_out", c.trace_out},
          {"records_out", c.records_out},
          {"ratios_out", c.ratios_out},
          {"population_in", c.population_in}};
}

CommandResult run_regions(const RunConfig& config) {
  CommandResult out{base_report("regions", config), kOk};
  out.report["region"] = to_json(region_check(config.params));
  return out;
}

std::size_t run_regions_grid(const RunConfig& config, std::ostream& csv) {
  if (config.grid_p.empty() || config.grid_alpha.empty() || config.grid_beta.empty()) {
    throw std::invalid_argument("grid mode needs --grid-p, --grid-alpha and --grid-beta");
  }
  csv << "p,alpha,beta,lhs_13,lhs_14,lhs_15,pass_13,pass_14,pass_15,pass_small_alpha\n";
  std::size_t rows = 0;
  for (int p : config.grid_p) {
    for (double alpha : config.grid_alpha) {
      for (double beta : config.grid_beta) {
        const RegionReport r = region_check(ModelParams{p, alpha, beta, config.params.seed});
        csv << p << ',' << format_double(alpha) << ',' << format_double(beta) << ',' << format_double(r.lhs_13)
            << ',' << format_double(r.lhs_14) << ',' << format_double(r.lhs_15) << ',' << r.pass_13 << ','
            << r.pass_14 << ',' << r.pass_15 << ',' << r.pass_small_alpha << '\n';
        ++rows;
      }
    }
  }
  return rows;
}

CommandResult run_lemma6(const RunConfig& config) {
  CommandResult out{base_report("lemma6", config), kOk};
  const Lemma6Result r = lemma6_scan();
  json violations = json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"p", v.p}, {"alpha", v.alpha}, {"beta", v.beta}, {"region", to_json(v.report)}});
  }
  out.report["points"] = r.points;
  out.report["points_in_13"] = r.points_in_13;
  out.report["violations"] = violations;
  if (!r.violations.empty()) out.exit_code = kInvariantViolation;
  return out;
}

CommandResult run_fixedpoint(const RunConfig& config) {
  CommandResult out{base_report("fixedpoint", config), kOk};
  progress("population dynamics, M=" + std::to_string(config.population));
  const FixedPointResult fp = solve_fixed_point(config.params, fixedpoint_options(config), fixedpoint_stream(config));
  out.report["fixedpoint"] = fixedpoint_json(fp);
  if (!config.population_out.empty()) write_population(config.population_out, fp.population, config.params);
  if (!config.trace_out.empty()) write_trace(config.trace_out, fp.trace);
  if (!fp.converged) out.exit_code = kNotConverged;
  return out;
}

CommandResult run_rs(const RunConfig& config) {
  CommandResult out{base_report("rs", config), kOk};
  Population pop;
  if (!config.population_in.empty()) {
    pop = read_population(config.population_in).population;
    out.report["population_source"] = config.population_in;
  } else {
    progress("no --population-in; solving the fixed point first");
    const FixedPointResult fp =
        solve_fixed_point(config.params, fixedpoint_options(config), fixedpoint_stream(config));
    out.report["fixedpoint"] = fixedpoint_json(fp);
    if (!fp.converged) out.exit_code = kNotConverged;
    pop = fp.population;
  }
  const RsBreakdown b = rs_eval(pop, config.params, config.n_mc, rs_stream(config));
  out.report["rs"] = to_json(b);
  out.report["rs"]["M"] = pop.size();
  out.report["rs"]["n_mc"] = config.n_mc;
  const RegionReport region = region_check(config.params);
  out.report["rs"]["label"] = region.pass_14 ? "fixed_point_value" : "upper_bound_candidate";
  return out;
}

CommandResult run_exact(const RunConfig& config) {
  CommandResult out{base_report("exact", config), kOk};
  json per_n = json::array();
  std::vector<InstanceRecord> all_records;
  for (int n : config.sites) {
    progress("exact free energy, N=" + std::to_string(n));
    std::vector<InstanceRecord> records;
    const Estimate f = free_energy(config.params, n, config.n_disorder, exact_stream(config, n), &records, limits_of(config));
    per_n.push_back({{"n", n}, {"free_energy", to_json(f)}});
    all_records.insert(all_records.end(), records.begin(), records.end());
  }
  out.report["exact"] = per_n;
  if (per_n.size() == 1) {
    out.report["value"] = per_n[0]["free_energy"]["value"];
    out.report["std_error"] = per_n[0]["free_energy"]["std_error"];
  }
  if (!config.records_out.empty()) write_instance_records(config.records_out, all_records);
  return out;
}

CommandResult run_overlap(const RunConfig& config) {
  CommandResult out{base_report("overlap", config), kOk};
  json per_n = json::array();
  for (int n : config.sites) {
    progress("overlap moments, N=" + std::to_string(n));
    const OverlapMoments o = overlap_moment_gap(config.params, n, config.n_disorder, overlap_stream(config, n), limits_of(config));
    per_n.push_back({{"n", n}, {"r12_sq", to_json(o.r12_sq)}, {"r12_r34", to_json(o.r12_r34)}, {"gap", o.gap.value},
                     {"gap_std_error", o.gap.std_error}});
  }
  out.report["overlap"] = per_n;
  if (per_n.size() == 1) out.report["gap"] = per_n[0]["gap"];
  return out;
}

CommandResult run_lipschitz(const RunConfig& config) {
  CommandResult out{base_report("lipschitz", config), kOk};
  const LipschitzResult r =
      lipschitz_test(config.params, config.r_max, config.trials, config.params.stream().split("lipschitz"));
  out.report["max_ratio"] = r.max_ratio;
  out.report["violations"] = r.violations;
  out.report["skipped"] = r.skipped;
  out.report["trials"] = r.trials;
  if (r.violations > 0) out.exit_code = kInvariantViolation;
  return out;
}

CommandResult run_contraction(const RunConfig& config) {
  CommandResult out{base_report("contraction", config), kOk};
  const ContractionResult r = contraction_test(config.params, config.population, config.pairs, config.init_p,
                                               config.init_q, config.params.stream().split("contraction"));
  const RegionReport region = region_check(config.params);
  out.report["ratios"] = r.ratios;
  out.report["skipped"] = r.skipped;
  out.report["mean_ratio"] = r.mean_ratio;
  out.report["bound"] = r.bound;
  out.report["slack"] = r.slack;
  out.report["within_bound"] = r.within_bound;
  out.report["inside_region_14"] = region.pass_14;
  if (!config.ratios_out.empty()) {
    std::ofstream csv(config.ratios_out);
    if (!csv) throw std::runtime_error("cannot open " + config.ratios_out);
    csv << "pair,ratio\n";
    for (std::size_t i = 0; i < r.ratios.size(); ++i) csv << i << ',' << format_double(r.ratios[i]) << '\n';
  }
  if (region.pass_14 && !r.within_bound) out.exit_code = kInvariantViolation;
  return out;
}

CommandResult run_compare(const RunConfig& config) {
  CommandResult out{base_report("compare", config), kOk};
  const RegionReport region = region_check(config.params);
  out.report["region"] = to_json(region);
  const bool in_region = region.pass_13 && region.pass_14;
  json warnings = json::array();
  if (!region.pass_13) warnings.push_back("high-temperature condition fails: no limit statement applies");
  if (!region.pass_14) warnings.push_back("contraction condition fails: rs total is only an upper-bound candidate");
  for (const auto& w : warnings) progress(std::string("warning: ") + w.get<std::string>());
  out.report["warnings"] = warnings;

  try {
    progress("population dynamics, M=" + std::to_string(config.population));
    const FixedPointResult fp = solve_fixed_point(config.params, fixedpoint_options(config), fixedpoint_stream(config));
    out.report["fixedpoint"] = fixedpoint_json(fp);
    if (!config.population_out.empty()) write_population(config.population_out, fp.population, config.params);
    if (!config.trace_out.empty()) write_trace(config.trace_out, fp.trace);

    progress("rs functional, n_mc=" + std::to_string(config.n_mc));
    const RsBreakdown rs = rs_eval(fp.population, config.params, config.n_mc, rs_stream(config));
    out.report["rs"] = to_json(rs);
    out.report["rs_total"] = rs.total.value;
    out.report["rs_label"] = region.pass_14 ? "fixed_point_value" : "upper_bound_candidate";

    json per_n = json::array();
    bool all_within = true;
    std::vector<InstanceRecord> all_records;
    for (int n : config.sites) {
      progress("exact free energy, N=" + std::to_string(n));
      std::vector<InstanceRecord> records;
      const Estimate f = free_energy(config.params, n, config.n_disorder, exact_stream(config, n), &records, limits_of(config));
      all_records.insert(all_records.end(), records.begin(), records.end());
      const double gap = std::abs(f.value - rs.total.value);
      const double combined = combined_error(f.std_error, rs.total.std_error);
      const double tolerance = 3.0 * combined + config.finite_size_c / n;
      const bool within = gap <= tolerance;
      all_within = all_within && within;
      per_n.push_back({{"n", n},
                       {"exact", to_json(f)},
                       {"gap", gap},
                       {"combined_std_error", combined},
                       {"tolerance", tolerance},
                       {"within_tolerance", within}});
      out.report["per_n"] = per_n;
    }
    out.report["all_within_tolerance"] = all_within;
    if (!config.records_out.empty()) write_instance_records(config.records_out, all_records);

    if (!fp.converged) out.exit_code = kNotConverged;
    else if (in_region && !all_within) out.exit_code = kInvariantViolation;
  } catch (const std::exception& e) {
    out.report["error"] = e.what();
    out.exit_code = kInputError;
  }
  return out;
}

}  // namespace ksat::cli
