#pragma once

#include <vector>

#include "cargoload/model.hpp"

namespace cargoload {

enum class ConstraintClass { Hard, Soft };

// Saturation values and erf slope scales for the two constraint classes,
// plus the separate penalty on the empty load.
struct PenaltyConfig {
  double p_hard = 1.0;
  double p_soft = 1.0;
  double sigma_hard = 1.0;
  double sigma_soft = 5.0;
  double p_zero = 1.0;

  // p_hard = 1.5 m W, p_soft = 0.5 W, p_zero = W with W the summed container
  // weight and m the slot count. m W bounds total_weight over all bitstrings,
  // so a saturated hard penalty outweighs any payload a bitstring can claim.
  static PenaltyConfig defaults_for(const ProblemInstance& inst);
};

// Throws ConfigError on non-positive fields or sigma_hard >= sigma_soft.
void check_penalty_config(const PenaltyConfig& cfg);

// Constraint left-hand sides minus their bounds, clipped at zero.
struct ViolationReport {
  double weight = 0.0;
  double cog = 0.0;
  std::vector<double> shear;              // per slot
  std::vector<double> slot_multiplicity;  // per container
  std::vector<double> contiguity;         // per Type3 container, in id order
  std::vector<double> slot_capacity;      // per slot

  bool feasible() const;
};

double weight_violation(const ProblemInstance& inst, const Assignment& x);
double cog_violation(const ProblemInstance& inst, const Assignment& x);
std::vector<double> shear_violations(const ProblemInstance& inst, const Assignment& x);
std::vector<double> slot_multiplicity_violations(const ProblemInstance& inst, const Assignment& x);
std::vector<double> contiguity_violations(const ProblemInstance& inst, const Assignment& x);
std::vector<double> slot_capacity_violations(const ProblemInstance& inst, const Assignment& x);

ViolationReport violations(const ProblemInstance& inst, const Assignment& x);

// P * erf(v / sigma) for the chosen class. Throws DomainError for v < 0.
double penalty(double v, ConstraintClass cls, const PenaltyConfig& cfg);

// Summed in a fixed order: weight, shear, capacity, multiplicity, contiguity
// (hard), then center of gravity (soft).
double total_penalty(const ViolationReport& report, const PenaltyConfig& cfg);
double total_penalty(const ProblemInstance& inst, const Assignment& x, const PenaltyConfig& cfg);

}  // namespace cargoload
