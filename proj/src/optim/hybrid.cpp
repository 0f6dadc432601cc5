#include <algorithm>
#include <limits>

#include "cargoload/errors.hpp"
#include "cargoload/optim.hpp"
#include "cargoload/sim.hpp"

namespace cargoload {

std::string to_string(Method m) {
  switch (m) {
    case Method::SPSA: return "spsa";
    case Method::Cobyla: return "cobyla";
    case Method::NelderMead: break;
  }
  return "nelder_mead";
}

Method method_from_string(const std::string& s) {
  if (s == "nelder_mead" || s == "NelderMead" || s == "nm") return Method::NelderMead;
  if (s == "spsa" || s == "SPSA") return Method::SPSA;
  if (s == "cobyla" || s == "COBYLA") return Method::Cobyla;
  throw ConfigError("unknown optimizer method '" + s + "'");
}

void check_optimizer_config(const OptimizerConfig& cfg) {
  if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be at least 1");
  if (cfg.shots < 1) throw ConfigError("shots must be at least 1");
  check_epsilon(cfg.cvar_epsilon);
  if (!(cfg.init_lo < cfg.init_hi)) throw ConfigError("init range must satisfy lo < hi");
  if (!(cfg.tolerance >= 0.0)) throw ConfigError("tolerance must be non-negative");
}

CvarObjective::CvarObjective(const ProblemInstance& inst, const CircuitIR& circuit, const PenaltyConfig& penalty,
                             const OptimizerConfig& cfg)
    : inst_(&inst), circuit_(&circuit), penalty_(penalty), cfg_(cfg), cache_(inst, penalty) {
  check_optimizer_config(cfg);
  if (circuit.n_qubits != inst.num_qubits())
    throw BindingError("circuit has " + std::to_string(circuit.n_qubits) + " qubits, instance needs " +
                       std::to_string(inst.num_qubits()));
  if (cfg.exact_mode) {
    if (inst.num_qubits() > kExactModeQubitCap)
      throw CapacityError("exact mode limited to " + std::to_string(kExactModeQubitCap) + " qubits");
    table_ = build_energy_table(inst, penalty);
    table_->ascending();
  }
}

double CvarObjective::evaluate(std::span<const double> theta, std::uint64_t sample_seed) {
  const auto state = run<double>(*circuit_, theta);
  if (table_) {
    last_probs_ = probability_vector(state);
    return table_->cvar(last_probs_, cfg_.cvar_epsilon);
  }
  last_counts_ = sample(state, cfg_.shots, sample_seed);
  std::vector<double> energies;
  energies.reserve(cfg_.shots);
  for (const auto& [s, count] : last_counts_.counts) energies.insert(energies.end(), count, cache_(s));
  return cvar_from_samples(energies, cfg_.cvar_epsilon);
}

double CvarObjective::operator()(std::span<const double> theta) {
  const double v = evaluate(theta, cfg_.seed + evaluations_);
  ++evaluations_;
  return v;
}

double CvarObjective::last_mass_on(std::span<const BasisIndex> states) const {
  double mass = 0.0;
  for (BasisIndex s : states) mass += table_ ? last_probs_[s] : last_counts_.frequency(s);
  return mass;
}

RunTrace optimize(const ProblemInstance& inst, const CircuitIR& circuit, const PenaltyConfig& penalty,
                  const OptimizerConfig& cfg, const ExactSolution* reference) {
  CvarObjective objective(inst, circuit, penalty, cfg);
  const std::size_t count = circuit.parameter_count();

  RunTrace trace;
  if (cfg.warm_start) {
    if (cfg.warm_start->size() != count)
      throw BindingError("warm start has " + std::to_string(cfg.warm_start->size()) + " parameters, circuit needs " +
                         std::to_string(count));
    trace.initial_parameters = *cfg.warm_start;
  } else {
    trace.initial_parameters = random_parameters(count, cfg.seed, cfg.init_lo, cfg.init_hi);
  }

  std::vector<BasisIndex> optimal_states;
  if (reference) optimal_states = reference->optimal_states();
  double best = std::numeric_limits<double>::infinity();

  ObjectiveFn tracked = [&](std::span<const double> theta) {
    const double cost = objective(theta);
    best = std::min(best, cost);
    TraceRecord rec;
    rec.iteration = trace.records.size();
    rec.cost = cost;
    rec.best_cost = best;
    if (reference) rec.p_optimal = objective.last_mass_on(optimal_states);
    trace.records.push_back(rec);
    return cost;
  };

  MinimizeResult result;
  if (cfg.method == Method::SPSA) {
    SpsaOptions opts;
    opts.budget = cfg.max_iterations;
    opts.schedule = cfg.spsa;
    opts.seed = cfg.seed;
    result = spsa(tracked, trace.initial_parameters, opts);
  } else if (cfg.method == Method::Cobyla) {
    CobylaOptions opts;
    opts.budget = cfg.max_iterations;
    opts.rho_begin = cfg.simplex_step;
    opts.rho_end = cfg.tolerance;
    result = cobyla(tracked, trace.initial_parameters, opts);
  } else {
    NelderMeadOptions opts;
    opts.budget = cfg.max_iterations;
    opts.tolerance = cfg.tolerance;
    opts.initial_step = cfg.simplex_step;
    result = nelder_mead(tracked, trace.initial_parameters, opts);
  }

  trace.final_parameters = std::move(result.x);
  trace.best_cost = result.value;
  trace.final_counts = sample(run<double>(circuit, trace.final_parameters), cfg.shots, cfg.seed);
  return trace;
}

InferenceReport report_counts(const ProblemInstance& inst, const ShotCounts& counts, const PenaltyConfig& penalty,
                              std::size_t top_k, const ExactSolution* reference) {
  InferenceReport report;
  report.counts = counts;
  std::vector<std::pair<BasisIndex, std::uint64_t>> ranked(counts.counts.begin(), counts.counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (ranked.size() > top_k) ranked.resize(top_k);
  for (const auto& [s, c] : ranked) {
    const auto x = Assignment::from_index(s, inst.num_containers(), inst.num_slots());
    ReportRow row;
    row.state = s;
    row.bitstring = basis_string(s, inst.num_qubits());
    row.count = c;
    row.probability = counts.frequency(s);
    row.energy = state_energy(inst, s, penalty);
    row.feasible = feasible(inst, x);
    row.total_weight = total_weight(inst, x);
    if (reference) row.optimal = reference->is_optimal(s);
    report.rows.push_back(std::move(row));
  }
  return report;
}

InferenceReport infer(const ProblemInstance& inst, const CircuitIR& circuit, std::span<const double> theta,
                      std::uint64_t shots, std::uint64_t seed, const PenaltyConfig& penalty, std::size_t top_k,
                      const ExactSolution* reference) {
  if (circuit.n_qubits != inst.num_qubits()) throw BindingError("circuit does not match instance size");
  const auto counts = sample(run<double>(circuit, theta), shots, seed);
  return report_counts(inst, counts, penalty, top_k, reference);
}

bool top_is_optimal(const ShotCounts& counts, const ExactSolution& reference, double threshold) {
  if (counts.counts.empty()) return false;
  auto top = counts.counts.begin();
  for (auto it = counts.counts.begin(); it != counts.counts.end(); ++it)
    if (it->second > top->second) top = it;
  return reference.is_optimal(top->first) && counts.frequency(top->first) >= threshold;
}

}  // namespace cargoload
