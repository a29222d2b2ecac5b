#pragma once

#include <map>
#include <string>

#include "zenosta/scenario.hpp"
#include "zenosta/sweep.hpp"
#include "zenosta/table.hpp"

namespace zenosta {

struct RunResult {
  Table table;
  std::map<std::string, double> summary;
};

/// Execute one protocol (strobe/sme/cap/cd/identities).
RunResult run_protocol(const ScenarioConfig& cfg);

struct SweepResult {
  std::string axis;
  std::string metric;
  std::vector<double> values;
  std::vector<double> metrics;
  SlopeFit fit;
  Table table;  // axis value + metric per row
};

/// Run per-point scenarios (parallel over points) and fit the log-log slope.
SweepResult run_sweep(const ScenarioConfig& cfg);

/// Default sweep metric (a summary key) for each protocol.
std::string default_sweep_metric(const std::string& protocol);

}  // namespace zenosta
