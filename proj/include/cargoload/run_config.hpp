#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cargoload/ansatz.hpp"
#include "cargoload/constraints.hpp"
#include "cargoload/optim.hpp"
#include "json.hpp"

namespace cargoload {

// Penalty section of the run config; omitted fields fall back to
// PenaltyConfig::defaults_for(instance).
struct PenaltyOverrides {
  std::optional<double> p_hard, p_soft, sigma_hard, sigma_soft, p_zero;

  PenaltyConfig resolve(const ProblemInstance& inst) const;
};

// Run-config file:
//   { "method": "nelder_mead" | "spsa" | "cobyla", "max_iterations", "shots",
//     "cvar_epsilon", "seed", "tolerance", "warm_start_path", "exact_mode",
//     "penalty": {p_hard, p_soft, sigma_hard, sigma_soft, p_zero},
//     "ansatz": {blocks, entanglement, final_ry},
//     "init_range": [lo, hi], "simplex_step",
//     "spsa": {a, c, A, alpha, gamma} }
// Every key is optional.
struct RunConfig {
  OptimizerConfig optimizer;
  bool has_seed = false;
  PenaltyOverrides penalty;
  CircuitLayout layout;
  std::string warm_start_path;
};

PenaltyOverrides penalty_overrides_from_json(const nlohmann::json& doc);
RunConfig run_config_from_json(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace cargoload
