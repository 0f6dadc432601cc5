#include "cargoload/run_config.hpp"

#include <set>

#include "cargoload/errors.hpp"
#include "cargoload/instance_io.hpp"

namespace cargoload {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& known, const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!known.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

}  // namespace

PenaltyConfig PenaltyOverrides::resolve(const ProblemInstance& inst) const {
  auto cfg = PenaltyConfig::defaults_for(inst);
  if (p_hard) cfg.p_hard = *p_hard;
  if (p_soft) cfg.p_soft = *p_soft;
  if (sigma_hard) cfg.sigma_hard = *sigma_hard;
  if (sigma_soft) cfg.sigma_soft = *sigma_soft;
  if (p_zero) cfg.p_zero = *p_zero;
  check_penalty_config(cfg);
  return cfg;
}

PenaltyOverrides penalty_overrides_from_json(const json& doc) {
  reject_unknown(doc, {"p_hard", "p_soft", "sigma_hard", "sigma_soft", "p_zero"}, "penalty");
  PenaltyOverrides p;
  auto take = [&](const char* key, std::optional<double>& slot) {
    if (doc.contains(key)) slot = doc.at(key).get<double>();
  };
  take("p_hard", p.p_hard);
  take("p_soft", p.p_soft);
  take("sigma_hard", p.sigma_hard);
  take("sigma_soft", p.sigma_soft);
  take("p_zero", p.p_zero);
  return p;
}

RunConfig run_config_from_json(const json& doc) {
  reject_unknown(doc,
                 {"method", "max_iterations", "shots", "cvar_epsilon", "seed", "tolerance", "warm_start_path",
                  "exact_mode", "penalty", "ansatz", "init_range", "simplex_step", "spsa"},
                 "run config");
  RunConfig rc;
  auto& o = rc.optimizer;
  try {
    if (doc.contains("method")) o.method = method_from_string(doc.at("method").get<std::string>());
    if (doc.contains("max_iterations")) o.max_iterations = doc.at("max_iterations").get<std::size_t>();
    if (doc.contains("shots")) o.shots = doc.at("shots").get<std::uint64_t>();
    if (doc.contains("cvar_epsilon")) o.cvar_epsilon = doc.at("cvar_epsilon").get<double>();
    if (doc.contains("seed")) {
      o.seed = doc.at("seed").get<std::uint64_t>();
      rc.has_seed = true;
    }
    if (doc.contains("tolerance")) o.tolerance = doc.at("tolerance").get<double>();
    if (doc.contains("warm_start_path")) rc.warm_start_path = doc.at("warm_start_path").get<std::string>();
    if (doc.contains("exact_mode")) o.exact_mode = doc.at("exact_mode").get<bool>();
    if (doc.contains("simplex_step")) o.simplex_step = doc.at("simplex_step").get<double>();
    if (doc.contains("init_range")) {
      const auto r = doc.at("init_range").get<std::vector<double>>();
      if (r.size() != 2) throw ConfigError("init_range must be [lo, hi]");
      o.init_lo = r[0];
      o.init_hi = r[1];
    }
    if (doc.contains("penalty")) rc.penalty = penalty_overrides_from_json(doc.at("penalty"));
    if (doc.contains("ansatz")) {
      const auto& a = doc.at("ansatz");
      reject_unknown(a, {"blocks", "entanglement", "final_ry"}, "ansatz");
      if (a.contains("blocks")) rc.layout.blocks = a.at("blocks").get<std::size_t>();
      if (a.contains("entanglement"))
        rc.layout.entanglement = entanglement_from_string(a.at("entanglement").get<std::string>());
      if (a.contains("final_ry")) rc.layout.final_ry = a.at("final_ry").get<bool>();
    }
    if (doc.contains("spsa")) {
      const auto& s = doc.at("spsa");
      reject_unknown(s, {"a", "c", "A", "alpha", "gamma"}, "spsa");
      o.spsa.a = s.value("a", o.spsa.a);
      o.spsa.c = s.value("c", o.spsa.c);
      o.spsa.A = s.value("A", o.spsa.A);
      o.spsa.alpha = s.value("alpha", o.spsa.alpha);
      o.spsa.gamma = s.value("gamma", o.spsa.gamma);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed run config: ") + e.what());
  }
  check_optimizer_config(o);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) { return run_config_from_json(read_json_file(path)); }

}  // namespace cargoload
