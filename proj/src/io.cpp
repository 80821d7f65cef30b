#include "ksat/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ksat {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::runtime_error("bad number: '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

void write_population(std::ostream& out, const Population& pop, const ModelParams& params) {
  out << "# p=" << params.p << " alpha=" << format_double(params.alpha) << " beta=" << format_double(params.beta)
      << " M=" << pop.size() << " generation=" << pop.generation << " seed=" << params.seed << '\n';
  for (double x : pop.members) out << format_double(x) << '\n';
}

void write_population(const std::string& path, const Population& pop, const ModelParams& params) {
  auto out = open_for_write(path);
  write_population(out, pop, params);
  if (!out) throw std::runtime_error("write failed: " + path);
}

PopulationSnapshot read_population(std::istream& in) {
  PopulationSnapshot snap;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw std::runtime_error("missing snapshot header");

  std::size_t declared = 0;
  bool have_m = false;
  std::istringstream header(line.substr(2));
  std::string field;
  while (header >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw std::runtime_error("bad header field: " + field);
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "p") snap.params.p = std::stoi(value);
    else if (key == "alpha") snap.params.alpha = parse_double(value);
    else if (key == "beta") snap.params.beta = parse_double(value);
    else if (key == "M") { declared = std::stoull(value); have_m = true; }
    else if (key == "generation") snap.population.generation = std::stoi(value);
    else if (key == "seed") snap.params.seed = std::stoull(value);
    else throw std::runtime_error("unknown header field: " + key);
  }

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    snap.population.members.push_back(parse_double(line));
  }
  if (have_m && declared != snap.population.size()) {
    throw std::runtime_error("snapshot declares M=" + std::to_string(declared) + " but holds " +
                             std::to_string(snap.population.size()) + " members");
  }
  snap.population.validate();
  return snap;
}

PopulationSnapshot read_population(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_population(in);
}

void write_trace(const std::string& path, const std::vector<double>& trace) {
  auto out = open_for_write(path);
  out << "iteration,distance\n";
  for (std::size_t i = 0; i < trace.size(); ++i) out << (i + 1) << ',' << format_double(trace[i]) << '\n';
}

void write_instance_records(const std::string& path, const std::vector<InstanceRecord>& records) {
  auto out = open_for_write(path);
  out << "instance,n_clauses,log_z\n";
  for (const auto& r : records) out << r.id << ',' << r.n_clauses << ',' << format_double(r.log_z) << '\n';
}

}  // namespace ksat
