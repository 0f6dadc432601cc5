#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cargoload/ansatz.hpp"
#include "cargoload/constraints.hpp"
#include "cargoload/cost.hpp"
#include "cargoload/distribution.hpp"
#include "cargoload/model.hpp"
#include "cargoload/oracle.hpp"

namespace cargoload {

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  std::vector<double> trace;  // objective value of every evaluation, in order
};

struct NelderMeadOptions {
  std::size_t budget = 1000;   // objective evaluations
  double tolerance = 1e-6;     // stop once the simplex diameter drops below this
  double initial_step = 0.5;   // edge length of the starting simplex
  // Dimension-dependent coefficients (Gao & Han); identical to the classic
  // 1 / 2 / 0.5 / 0.5 set in two dimensions.
  bool adaptive = true;
};

MinimizeResult nelder_mead(const ObjectiveFn& f, std::vector<double> x0, const NelderMeadOptions& opts);

// Gains a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
struct SpsaSchedule {
  double a = 0.2;
  double c = 0.1;
  double A = 10.0;
  double alpha = 0.602;
  double gamma = 0.101;
};

struct SpsaOptions {
  std::size_t budget = 1000;  // objective evaluations, two per iteration
  SpsaSchedule schedule;
  std::uint64_t seed = 0;
};

// Rademacher (+-1) perturbation per coordinate. Any evaluation left over
// after the last full iteration is spent on the final iterate.
MinimizeResult spsa(const ObjectiveFn& f, std::vector<double> x0, const SpsaOptions& opts);

// Rademacher perturbation used by spsa(); exposed for tests.
std::vector<double> rademacher(std::size_t dim, std::uint64_t seed, std::size_t iteration);

struct CobylaOptions {
  std::size_t budget = 1000;  // objective evaluations
  double rho_begin = 1.0;     // initial trust-region radius and simplex edge
  double rho_end = 1e-4;      // final trust-region radius
};

// Powell's linear-approximation trust-region method (COBYLA) without
// constraints. Returns the best evaluated point.
MinimizeResult cobyla(const ObjectiveFn& f, std::vector<double> x0, const CobylaOptions& opts);

enum class Method { NelderMead, SPSA, Cobyla };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct OptimizerConfig {
  Method method = Method::NelderMead;
  std::size_t max_iterations = 100;  // objective evaluations
  std::uint64_t shots = 1000;
  double cvar_epsilon = 0.25;
  std::uint64_t seed = 0;
  double tolerance = 1e-4;
  std::optional<std::vector<double>> warm_start;
  bool exact_mode = false;
  double init_lo = -3.141592653589793;
  double init_hi = 3.141592653589793;
  double simplex_step = 0.5;
  SpsaSchedule spsa;
};

// Throws ConfigError on a zero budget or zero shots, DomainError on epsilon.
void check_optimizer_config(const OptimizerConfig& cfg);

inline constexpr std::size_t kExactModeQubitCap = 20;

// CVaR cost of a parameter vector. Sampled mode draws `shots` measurements
// with seed base_seed + evaluation counter; exact mode uses the full output
// distribution (n*m <= 20).
class CvarObjective {
 public:
  CvarObjective(const ProblemInstance& inst, const CircuitIR& circuit, const PenaltyConfig& penalty,
                const OptimizerConfig& cfg);

  double operator()(std::span<const double> theta);

  // Cost at theta with an explicit sampling seed; does not advance the counter.
  double evaluate(std::span<const double> theta, std::uint64_t sample_seed);

  std::uint64_t evaluations() const { return evaluations_; }

  // Probability mass on `states` in the most recent evaluation (shot
  // frequency in sampled mode, exact probability in exact mode).
  double last_mass_on(std::span<const BasisIndex> states) const;

 private:
  const ProblemInstance* inst_;
  const CircuitIR* circuit_;
  PenaltyConfig penalty_;
  OptimizerConfig cfg_;
  EnergyCache cache_;
  std::optional<EnergyTable> table_;
  std::uint64_t evaluations_ = 0;
  ShotCounts last_counts_;
  std::vector<double> last_probs_;
};

struct TraceRecord {
  std::size_t iteration = 0;
  double cost = 0.0;
  double best_cost = 0.0;  // lowest cost seen up to and including this iteration
  std::optional<double> p_optimal;
};

struct RunTrace {
  std::vector<TraceRecord> records;
  std::vector<double> initial_parameters;
  std::vector<double> final_parameters;  // best-seen
  double best_cost = 0.0;
  ShotCounts final_counts;  // cfg.shots measurements of the best-seen circuit, sampled with cfg.seed
};

// `reference` enables the p_optimal column.
RunTrace optimize(const ProblemInstance& inst, const CircuitIR& circuit, const PenaltyConfig& penalty,
                  const OptimizerConfig& cfg, const ExactSolution* reference = nullptr);

struct ReportRow {
  BasisIndex state = 0;
  std::string bitstring;
  std::uint64_t count = 0;
  double probability = 0.0;
  double energy = 0.0;
  bool feasible = false;
  double total_weight = 0.0;
  std::optional<bool> optimal;
};

struct InferenceReport {
  ShotCounts counts;
  std::vector<ReportRow> rows;  // by count descending, ties by state index
};

inline constexpr std::size_t kDefaultTopK = 5;

InferenceReport report_counts(const ProblemInstance& inst, const ShotCounts& counts, const PenaltyConfig& penalty,
                              std::size_t top_k = kDefaultTopK, const ExactSolution* reference = nullptr);

InferenceReport infer(const ProblemInstance& inst, const CircuitIR& circuit, std::span<const double> theta,
                      std::uint64_t shots, std::uint64_t seed, const PenaltyConfig& penalty,
                      std::size_t top_k = kDefaultTopK, const ExactSolution* reference = nullptr);

inline constexpr double kSuccessProbability = 0.20;

// Most frequent outcome is an oracle optimum observed with frequency >= threshold.
bool top_is_optimal(const ShotCounts& counts, const ExactSolution& reference,
                    double threshold = kSuccessProbability);

}  // namespace cargoload
