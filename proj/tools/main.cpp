#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zenosta/errors.hpp"
#include "zenosta/runner.hpp"
#include "zenosta/scenario.hpp"
#include "zenosta/table.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::string out_path = "result.csv";
  std::string format = "csv";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void add_common(CLI::App* sub, CommonOptions& opts) {
  sub->add_option("--config", opts.config_path, "Scenario config (JSON)")
      ->required();
  sub->add_option("--out", opts.out_path, "Output file path");
  sub->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--seed", opts.seed, "Override the config seed");
  sub->add_option("--threads", opts.threads,
                  "Worker threads (default: ZENO_STA_THREADS env or 1)");
}

int default_threads() {
  if (const char* env = std::getenv("ZENO_STA_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

zenosta::ScenarioConfig load(const CommonOptions& opts,
                             const std::string& protocol) {
  auto cfg = zenosta::load_config(opts.config_path);
  if (!protocol.empty()) {
    if (!cfg.protocol.empty() && cfg.protocol != protocol)
      throw zenosta::ConfigInvalid("config protocol '" + cfg.protocol +
                                   "' conflicts with subcommand '" + protocol +
                                   "'");
    cfg.protocol = protocol;
  }
  if (opts.seed) cfg.seed = *opts.seed;
  cfg.threads = opts.threads ? *opts.threads : default_threads();
  return cfg;
}

void print_summary(const std::map<std::string, double>& summary) {
  for (const auto& [key, value] : summary)
    std::cout << key << " = " << zenosta::format_double(value) << "\n";
}

int run_plain(const CommonOptions& opts, const std::string& protocol) {
  const auto cfg = load(opts, protocol);
  const auto res = zenosta::run_protocol(cfg);
  zenosta::export_table(res.table, opts.out_path, opts.format);
  print_summary(res.summary);
  std::cout << "wrote " << opts.out_path << "\n";
  return 0;
}

int run_sweep_cmd(const CommonOptions& opts) {
  const auto cfg = load(opts, "");
  const auto res = zenosta::run_sweep(cfg);
  zenosta::export_table(res.table, opts.out_path, opts.format);
  std::cout << "axis = " << res.axis << "\n"
            << "metric = " << res.metric << "\n"
            << "slope = " << zenosta::format_double(res.fit.slope) << " +/- "
            << zenosta::format_double(res.fit.stderr) << "\n";
  if (res.fit.excluded_largest)
    std::cout << "note: largest axis value excluded by the asymptotic-regime"
                 " guard\n";
  std::cout << "wrote " << opts.out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-driven shortcuts to adiabaticity: stroboscopic"
               " Zeno, continuous monitoring, and absorbing-potential routes"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string selected;
  for (const char* name : {"strobe", "sme", "cap", "cd", "identities"}) {
    auto* sub = app.add_subcommand(name, std::string("Run the ") + name +
                                             " protocol");
    add_common(sub, opts);
    sub->callback([&selected, name] { selected = name; });
  }
  auto* sweep = app.add_subcommand("sweep", "Sweep an axis and fit the slope");
  add_common(sweep, opts);
  sweep->callback([&selected] { selected = "sweep"; });

  CLI11_PARSE(app, argc, argv);

  try {
    if (selected == "sweep") return run_sweep_cmd(opts);
    return run_plain(opts, selected);
  } catch (const zenosta::ZenoError& e) {
    nlohmann::json err{{"error", e.kind}, {"message", e.what()}};
    std::cout << err.dump() << std::endl;
    return 1;
  } catch (const std::exception& e) {
    nlohmann::json err{{"error", "Unexpected"}, {"message", e.what()}};
    std::cout << err.dump() << std::endl;
    return 2;
  }
}
