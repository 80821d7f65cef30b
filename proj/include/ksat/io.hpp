#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ksat/cavity.hpp"
#include "ksat/exact.hpp"
#include "ksat/model.hpp"

namespace ksat {

// Shortest decimal text that round-trips to the same double.
std::string format_double(double x);

// Population snapshot:
//   # p=<p> alpha=<alpha> beta=<beta> M=<M> generation=<g> seed=<seed>
//   <member>
//   ...
void write_population(std::ostream& out, const Population& pop, const ModelParams& params);
void write_population(const std::string& path, const Population& pop, const ModelParams& params);

struct PopulationSnapshot {
  Population population;
  ModelParams params;
};

// Throws std::runtime_error on malformed input or a member count that
// disagrees with the header.
PopulationSnapshot read_population(std::istream& in);
PopulationSnapshot read_population(const std::string& path);

// CSV "iteration,distance", iterations counted from 1.
void write_trace(const std::string& path, const std::vector<double>& trace);

// CSV "instance,n_clauses,log_z".
void write_instance_records(const std::string& path, const std::vector<InstanceRecord>& records);

}  // namespace ksat
