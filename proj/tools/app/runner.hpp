#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "run_config.hpp"

namespace lgt::app {

inline constexpr const char* kArtifactVersion = "0.1.0";

struct RunResult {
  nlohmann::ordered_json document;
  int exit_code = 0;
  std::vector<std::pair<std::string, double>> timings;  // seconds per task, kept out of the document by default
  std::vector<std::string> warnings;
};

struct RunOptions {
  /// Only run tasks of this kind (empty: all configured tasks). When the
  /// config has no such task a default one is added.
  std::string only_kind;
  bool include_timings = false;
};

/// Builds the model and runs the configured tasks. Throws ConfigError for
/// configuration problems; task failures set exit_code = 1.
RunResult run(const RunConfig& config, const RunOptions& options = {});

/// Order, classes, irrep dims, character table and validation for one group.
/// exit_code 2 when validation fails.
RunResult group_info(const CatalogPtr& catalog);
std::string group_info_text(const nlohmann::ordered_json& info);

/// Serialized output exactly as written to disk.
std::string serialize(const RunResult& r);

}  // namespace lgt::app
