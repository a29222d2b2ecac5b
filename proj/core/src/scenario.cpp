#include "zenosta/scenario.hpp"

#include <fstream>
#include <set>

#include "zenosta/errors.hpp"

namespace zenosta {

double ScenarioConfig::param(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) throw ConfigInvalid(key);
  return it->second;
}

double ScenarioConfig::param_or(const std::string& key, double fallback) const {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

void reject_unknown(const nlohmann::json& obj, const std::set<std::string>& keys,
                    const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!keys.contains(it.key()))
      throw ConfigInvalid("unknown key '" + it.key() + "' in " + where);
}

double as_number(const nlohmann::json& v, const std::string& name) {
  if (!v.is_number()) throw ConfigInvalid(name + " must be a number");
  return v.get<double>();
}

}  // namespace

ScenarioConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigInvalid("config root must be an object");
  reject_unknown(j,
                 {"model", "protocol", "grid", "seed", "oracle_refinement",
                  "threads", "mode", "params", "eigenvalues", "lambdas",
                  "sweep"},
                 "config");
  ScenarioConfig cfg;

  if (!j.contains("model")) throw ConfigInvalid("model");
  const auto& jm = j.at("model");
  reject_unknown(jm, {"name", "params"}, "model");
  cfg.model.name = jm.at("name").get<std::string>();
  if (jm.contains("params"))
    for (auto it = jm.at("params").begin(); it != jm.at("params").end(); ++it)
      cfg.model.params[it.key()] = as_number(it.value(), "model." + it.key());

  if (j.contains("protocol")) cfg.protocol = j.at("protocol").get<std::string>();

  if (j.contains("grid")) {
    const auto& jg = j.at("grid");
    reject_unknown(jg, {"T", "N"}, "grid");
    cfg.grid = TimeGrid(as_number(jg.at("T"), "grid.T"),
                        static_cast<int>(as_number(jg.at("N"), "grid.N")));
  }
  if (j.contains("seed")) {
    const auto& js = j.at("seed");
    const bool ok = js.is_number_unsigned() ||
                    (js.is_number_integer() && js.get<std::int64_t>() >= 0);
    if (!ok) throw ConfigInvalid("seed must be a 64-bit unsigned integer");
    cfg.seed = js.get<std::uint64_t>();
  }
  if (j.contains("oracle_refinement"))
    cfg.oracle_refinement =
        static_cast<int>(as_number(j.at("oracle_refinement"), "oracle_refinement"));
  if (j.contains("threads"))
    cfg.threads = static_cast<int>(as_number(j.at("threads"), "threads"));
  if (j.contains("mode")) cfg.strobe_mode = j.at("mode").get<std::string>();
  if (j.contains("params"))
    for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
      cfg.params[it.key()] = as_number(it.value(), "params." + it.key());
  if (j.contains("eigenvalues"))
    cfg.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  if (j.contains("lambdas"))
    cfg.lambdas = j.at("lambdas").get<std::vector<double>>();

  if (j.contains("sweep")) {
    const auto& js = j.at("sweep");
    reject_unknown(js, {"axis", "values", "metric"}, "sweep");
    cfg.sweep_axis = js.at("axis").get<std::string>();
    cfg.sweep_values = js.at("values").get<std::vector<double>>();
    if (js.contains("metric"))
      cfg.sweep_metric = js.at("metric").get<std::string>();
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigInvalid(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

void validate_config(const ScenarioConfig& cfg) {
  static const std::set<std::string> protocols{"strobe", "sme", "cap", "cd",
                                               "identities"};
  if (!protocols.contains(cfg.protocol))
    throw ConfigInvalid("protocol must be one of strobe/sme/cap/cd/identities");
  static const std::set<std::string> modes{"conditioned", "channel",
                                           "selective"};
  if (!modes.contains(cfg.strobe_mode))
    throw ConfigInvalid("mode must be conditioned/channel/selective");
  if (cfg.protocol != "identities" && cfg.model.name.empty())
    throw ConfigInvalid("model.name");
  if (cfg.protocol == "sme" || cfg.protocol == "cap")
    if (!cfg.params.contains("kappa")) throw ConfigInvalid("kappa");
  if (cfg.protocol == "sme" && !cfg.params.contains("trajectories"))
    throw ConfigInvalid("trajectories");
  if (cfg.threads < 1) throw ConfigInvalid("threads must be >= 1");
  if (!cfg.sweep_axis.empty()) {
    static const std::set<std::string> axes{"dt", "kappa", "M"};
    if (!axes.contains(cfg.sweep_axis))
      throw ConfigInvalid("sweep axis must be dt/kappa/M");
    if (cfg.sweep_values.size() < 4)
      throw ConfigInvalid("sweep requires at least 4 axis values");
    for (double v : cfg.sweep_values)
      if (v <= 0.0) throw ConfigInvalid("sweep values must be positive");
  }
}

}  // namespace zenosta
