#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcsie/formulations.hpp"
#include "gcsie/solver.hpp"

/// Experiment drivers behind the command-line tool. Every driver writes its
/// outputs into RunConfig::out_dir and returns the same data as JSON.
namespace gcsie::experiments {

using json = nlohmann::json;

/// Invalid configuration; what() starts with the offending field path.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& field, const std::string& why)
      : std::invalid_argument(field + ": " + why), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct SolverOptions {
  std::string type = "gmres";  // gmres | lu
  double tol = 1e-8;
  int maxit = 0;  // 0 means the system size
};

struct RunConfig {
  TransmissionConfig problem;
  Formulation formulation = Formulation::GcsieComposed;
  SolverOptions solver;
  double angle = 0.0;
  int far_field_angles = 64;
  bool diagnostics = false;
  std::uint64_t seed = 20240611;
  std::vector<int> convergence_n;  // defaults to {N}
  int reference_n = 0;             // 0: twice the largest convergence N
  std::vector<int> compare_n;      // defaults to {N}
  int symbols_n_min = 16, symbols_n_max = 64;
  std::string out_dir = ".";
};

/// Reads a JSON document; missing fields keep their defaults.
RunConfig parse_run_config(const json& doc);
RunConfig load_run_config(const std::string& path);
/// Fully resolved configuration, embedded in every report.
json to_json(const RunConfig& config);
/// Checks every field; throws ConfigError.
void validate(const RunConfig& config);

/// Solves once; writes report.json, timings.json and farfield.csv.
json run_solve(const RunConfig& config);
/// Far-field error per N (Mie reference on circles, finest-grid reference
/// otherwise) and composed/explicit disagreement; writes convergence.csv.
json run_convergence(const RunConfig& config);
/// GMRES iterations of the combined-source and classical systems on the same
/// data for every N in compare_n; writes compare.csv.
json run_compare(const RunConfig& config);
/// Circle symbols, regularizer errors and fitted slopes; writes symbols.csv
/// and slopes.csv. Rejects non-circular curves.
json run_symbols(const RunConfig& config);

/// "%.17g".
std::string format_double(double v);

}  // namespace gcsie::experiments
