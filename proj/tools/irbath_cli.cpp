// Scenario runner: irbath <scenario> [--config PATH] [--out DIR] [--seed N] [--threads N]
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "irbath/error.hpp"
#include "irbath/scenarios.hpp"

namespace {

void diagnose(const char* kind, const std::string& msg) {
  nlohmann::json d{{"error", kind}, {"message", msg}};
  std::cerr << d.dump() << '\n';
}

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream in(path);
  if (!in) throw irbath::IoError("cannot read config " + path);
  try {
    return nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw irbath::ValidationError(std::string("config parse error: ") + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Infrared photon-bath scenarios"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  for (const auto& name : irbath::scenario_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "directory for CSV output");
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--threads", threads, "worker threads");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("validation", e.what());
    return 2;
  }
  const std::string scenario = app.get_subcommands().front()->get_name();
  try {
    auto config = load_config(config_path);
    if (config.contains("scenario") && config["scenario"] != scenario)
      throw irbath::ValidationError("config is for scenario " + config["scenario"].dump());
    irbath::RunOptions opt;
    opt.out_dir = out_dir.empty() ? config.value("out", std::string{}) : out_dir;
    opt.seed = seed ? *seed : config.value("seed", std::uint64_t{0});
    opt.threads = threads ? *threads : config.value("threads", 1);
    auto summary = irbath::run_scenario(scenario, config, opt);
    std::cout << summary.dump(2) << '\n';
    return 0;
  } catch (const irbath::ValidationError& e) {
    diagnose("validation", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    diagnose("validation", e.what());
    return 2;
  } catch (const irbath::NumericError& e) {
    diagnose("numeric", e.what());
    return 3;
  } catch (const irbath::IoError& e) {
    diagnose("io", e.what());
    return 4;
  } catch (const std::exception& e) {
    diagnose("numeric", e.what());
    return 3;
  }
}
