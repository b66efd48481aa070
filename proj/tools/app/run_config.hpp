#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <lgt/model.hpp>

namespace lgt::app {

/// Raised for malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct GroupRef {
  std::string builtin;                        // e.g. "D3", "SU2_trunc"
  std::map<std::string, std::string> params;  // e.g. {"J_max", "1/2"}
  std::string file;                           // JSON group file, if set
};

struct LatticeConfig {
  int lx = 1;
  int ly = 1;
  bool periodic_x = false;
  bool periodic_y = false;
  bool include_matter = false;
};

struct SpectrumTask {
  int k = 6;
  /// "none", "trivial", or one irrep label per vertex.
  std::vector<std::string> sector{"none"};
};

struct ObservablesTask {
  std::string state = "ground";  // ground | vacuum
  std::vector<std::string> names;
  std::vector<std::string> sector{"none"};
};

struct Task {
  std::string kind;  // verify | spectrum | observables | vortex-masses
  SpectrumTask spectrum;
  ObservablesTask observables;
};

struct SolverConfig {
  int dense_limit = 4096;
  double tolerance = 1e-8;
  int max_iterations = 5000;
  int krylov_dim = 100;
};

struct RunConfig {
  GroupRef group;
  LatticeConfig lattice;
  ModelParams params;
  LinkBasis basis = LinkBasis::Rep;
  std::vector<Task> tasks;
  std::uint64_t seed = 1;
  std::string output;
  SolverConfig solver;
  int probes = 20;
  std::string source_dir;  // for resolving relative group file paths
};

RunConfig parse_config(const std::string& text, const std::string& source_dir = ".");
RunConfig load_config(const std::string& path);
/// Canonical JSON echo; parse_config(to_json(c)) reproduces c.
std::string config_to_json(const RunConfig& c);

CatalogPtr load_catalog(const GroupRef& ref, const std::string& source_dir = ".");
/// "D3", "Z_4", "SU2_trunc:J_max=1/2" or a path to a JSON group file.
CatalogPtr load_catalog_reference(const std::string& ref);

}  // namespace lgt::app
