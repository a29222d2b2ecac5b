#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "zenosta/operators.hpp"
#include "zenosta/time_grid.hpp"

namespace zenosta {

/// One declarative experiment: model + protocol + parameters + seed.
struct ScenarioConfig {
  ModelSpec model;
  std::string protocol;  // strobe | sme | cap | cd | identities
  TimeGrid grid{1.0, 100};
  std::uint64_t seed = 1;
  int oracle_refinement = 100;
  int threads = 1;
  std::string strobe_mode = "conditioned";  // conditioned | channel | selective
  std::map<std::string, double> params;
  std::vector<double> eigenvalues;  // SME x_n (default x_n = n)
  std::vector<double> lambdas;      // multi-sector CAP weights

  // Sweep block (empty axis → plain run).
  std::string sweep_axis;  // dt | kappa | M
  std::vector<double> sweep_values;
  std::string sweep_metric;

  double param(const std::string& key) const;
  double param_or(const std::string& key, double fallback) const;
};

/// Strict parse: unknown keys anywhere are rejected; protocol-required
/// parameters are checked up front.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);

void validate_config(const ScenarioConfig& cfg);

}  // namespace zenosta
