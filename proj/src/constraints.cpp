#include "cargoload/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cargoload/errors.hpp"

namespace cargoload {

PenaltyConfig PenaltyConfig::defaults_for(const ProblemInstance& inst) {
  const double w = inst.total_container_weight();
  // Every container in every slot is the heaviest bitstring the objective can
  // score; only a hard saturation above it rules out overfilled loads.
  const double reach = w * static_cast<double>(inst.num_slots());
  PenaltyConfig cfg;
  cfg.p_hard = 1.5 * reach;
  cfg.p_soft = 0.5 * w;
  cfg.sigma_hard = 1.0;
  cfg.sigma_soft = 5.0;
  cfg.p_zero = w;
  return cfg;
}

void check_penalty_config(const PenaltyConfig& cfg) {
  if (!(cfg.p_hard > 0.0) || !(cfg.p_soft > 0.0) || !(cfg.p_zero > 0.0) || !(cfg.sigma_hard > 0.0) ||
      !(cfg.sigma_soft > 0.0))
    throw ConfigError("penalty magnitudes and slopes must be positive");
  if (!(cfg.sigma_hard < cfg.sigma_soft)) throw ConfigError("sigma_hard must be smaller than sigma_soft");
}

bool ViolationReport::feasible() const {
  auto zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
  };
  return weight == 0.0 && cog == 0.0 && zero(shear) && zero(slot_multiplicity) && zero(contiguity) &&
         zero(slot_capacity);
}

double weight_violation(const ProblemInstance& inst, const Assignment& x) {
  return std::max(0.0, total_weight(inst, x) - inst.w_max);
}

double cog_violation(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  double moment = 0.0;
  double mass = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = inst.effective_weight(i);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!x.at(i, j)) continue;
      moment += inst.slots[j].distance * w;
      mass += w;
    }
  }
  // Empty load has no center of gravity; the zero state is penalized on its own.
  if (mass == 0.0) return 0.0;
  const double r = moment / mass;
  return std::max(0.0, r - inst.r_max) + std::max(0.0, inst.r_min - r);
}

std::vector<double> shear_violations(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  const std::size_t m = x.cols();
  // Effective weight parked in each slot.
  std::vector<double> slot_load(m, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = inst.effective_weight(i);
    for (std::size_t j = 0; j < m; ++j)
      if (x.at(i, j)) slot_load[j] += w;
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const double d = inst.slots[j].distance;
    double load = 0.5 * slot_load[j];
    if (d < 0.0) {
      for (std::size_t l = 0; l < j; ++l) load += slot_load[l];
    } else if (d > 0.0) {
      for (std::size_t l = j + 1; l < m; ++l) load += slot_load[l];
    }
    out[j] = std::max(0.0, load - inst.shear.at(d));
  }
  return out;
}

std::vector<double> slot_multiplicity_violations(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  std::vector<double> out(x.rows(), 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto bound = static_cast<std::size_t>(slot_bound(inst.containers[i].ctype));
    const std::size_t used = x.row_count(i);
    out[i] = used > bound ? static_cast<double>(used - bound) : 0.0;
  }
  return out;
}

std::vector<double> contiguity_violations(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  std::vector<double> out;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    if (inst.containers[i].ctype != ContainerType::Type3) continue;
    long adjacent = 0;
    for (std::size_t j = 0; j + 1 < x.cols(); ++j)
      if (x.at(i, j) && x.at(i, j + 1)) ++adjacent;
    const long used = static_cast<long>(x.row_count(i));
    out.push_back(static_cast<double>(std::labs(2 * adjacent - used)));
  }
  return out;
}

std::vector<double> slot_capacity_violations(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  std::vector<double> out(x.cols(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double fill = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
      if (x.at(i, j)) fill += size_factor(inst.containers[i].ctype);
    out[j] = std::max(0.0, fill - 1.0);
  }
  return out;
}

ViolationReport violations(const ProblemInstance& inst, const Assignment& x) {
  ViolationReport r;
  r.weight = weight_violation(inst, x);
  r.cog = cog_violation(inst, x);
  r.shear = shear_violations(inst, x);
  r.slot_multiplicity = slot_multiplicity_violations(inst, x);
  r.contiguity = contiguity_violations(inst, x);
  r.slot_capacity = slot_capacity_violations(inst, x);
  return r;
}

double penalty(double v, ConstraintClass cls, const PenaltyConfig& cfg) {
  if (!(v >= 0.0)) throw DomainError("penalty needs a non-negative violation, got " + std::to_string(v));
  if (v == 0.0) return 0.0;
  return cls == ConstraintClass::Hard ? cfg.p_hard * std::erf(v / cfg.sigma_hard)
                                      : cfg.p_soft * std::erf(v / cfg.sigma_soft);
}

double total_penalty(const ViolationReport& r, const PenaltyConfig& cfg) {
  double sum = penalty(r.weight, ConstraintClass::Hard, cfg);
  for (double v : r.shear) sum += penalty(v, ConstraintClass::Hard, cfg);
  for (double v : r.slot_capacity) sum += penalty(v, ConstraintClass::Hard, cfg);
  for (double v : r.slot_multiplicity) sum += penalty(v, ConstraintClass::Hard, cfg);
  for (double v : r.contiguity) sum += penalty(v, ConstraintClass::Hard, cfg);
  sum += penalty(r.cog, ConstraintClass::Soft, cfg);
  return sum;
}

double total_penalty(const ProblemInstance& inst, const Assignment& x, const PenaltyConfig& cfg) {
  return total_penalty(violations(inst, x), cfg);
}

}  // namespace cargoload
