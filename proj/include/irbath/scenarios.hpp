#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "irbath/units.hpp"

namespace irbath {

struct RunOptions {
  std::string out_dir;  // empty: no files written
  std::uint64_t seed = 0;
  int threads = 1;
};

const std::vector<std::string>& scenario_names();

/// Runs one scenario and returns its summary. Physical inputs are numbers in
/// natural units (eV, 1/eV) or {"value": v, "unit": "K"} objects. The summary
/// never depends on opt.threads.
nlohmann::json run_scenario(const std::string& name, const nlohmann::json& config, const RunOptions& opt);

/// Reads m, T, alpha and Lambda from a config (defaults: electron mass,
/// T = 0, CODATA alpha, Lambda = m/10).
PhysicalParams read_params(const nlohmann::json& config);
nlohmann::json params_json(const PhysicalParams& p);

}  // namespace irbath
