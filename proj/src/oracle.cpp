#include "cargoload/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <omp.h>

#include "cargoload/errors.hpp"

namespace cargoload {

bool feasible(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();

  for (std::size_t i = 0; i < n; ++i) {
    const auto t = inst.containers[i].ctype;
    const long used = static_cast<long>(x.row_count(i));
    if (used > slot_bound(t)) return false;
    if (t == ContainerType::Type3) {
      long adjacent = 0;
      for (std::size_t j = 0; j + 1 < m; ++j) adjacent += (x.at(i, j) && x.at(i, j + 1)) ? 1 : 0;
      if (2 * adjacent != used) return false;
    }
  }

  std::vector<double> slot_mass(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    double fill = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (x.at(i, j)) fill += size_factor(inst.containers[i].ctype);
    if (fill > 1.0) return false;
  }

  double mass = 0.0;
  double moment = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = inst.containers[i].weight / slot_bound(inst.containers[i].ctype);
    for (std::size_t j = 0; j < m; ++j) {
      if (!x.at(i, j)) continue;
      mass += w;
      moment += inst.slots[j].distance * w;
      slot_mass[j] += w;
    }
  }
  if (mass > inst.w_max) return false;
  if (mass > 0.0) {
    const double r = moment / mass;
    if (r < inst.r_min || r > inst.r_max) return false;
  }

  // Outboard load accumulated inward from each end of the hold.
  double outboard = 0.0;
  for (std::size_t j = 0; j < m && inst.slots[j].distance < 0.0; ++j) {
    if (outboard + 0.5 * slot_mass[j] > inst.shear.at(inst.slots[j].distance)) return false;
    outboard += slot_mass[j];
  }
  outboard = 0.0;
  for (std::size_t j = m; j-- > 0 && inst.slots[j].distance > 0.0;) {
    if (outboard + 0.5 * slot_mass[j] > inst.shear.at(inst.slots[j].distance)) return false;
    outboard += slot_mass[j];
  }
  for (std::size_t j = 0; j < m; ++j)
    if (inst.slots[j].distance == 0.0 && 0.5 * slot_mass[j] > inst.shear.at(0.0)) return false;
  return true;
}

std::vector<BasisIndex> ExactSolution::optimal_states() const {
  std::vector<BasisIndex> out;
  out.reserve(optima.size());
  for (const auto& x : optima) out.push_back(x.to_index());
  return out;
}

bool ExactSolution::is_optimal(BasisIndex state) const {
  return std::any_of(optima.begin(), optima.end(), [state](const Assignment& x) { return x.to_index() == state; });
}

namespace {

bool same_weight(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); }

struct Incumbent {
  double best = -1.0;
  std::vector<Assignment> optima;

  void offer(const ProblemInstance& inst, Assignment x) {
    if (!feasible(inst, x)) return;
    const double w = total_weight(inst, x);
    if (best >= 0.0 && same_weight(w, best)) {
      optima.push_back(std::move(x));
    } else if (w > best) {
      best = w;
      optima.clear();
      optima.push_back(std::move(x));
    }
  }

  void merge(Incumbent&& other) {
    if (other.optima.empty()) return;
    if (best >= 0.0 && same_weight(other.best, best)) {
      for (auto& x : other.optima) optima.push_back(std::move(x));
    } else if (other.best > best) {
      *this = std::move(other);
    }
  }
};

ExactSolution finish(Incumbent&& inc, std::uint64_t space) {
  ExactSolution sol;
  sol.optimal_weight = inc.best;
  sol.optima = std::move(inc.optima);
  std::sort(sol.optima.begin(), sol.optima.end(), [](const Assignment& a, const Assignment& b) {
    return encode_assignment(a).str() < encode_assignment(b).str();
  });
  sol.search_space_size = space;
  return sol;
}

std::uint64_t options_for(const ProblemInstance& inst, std::size_t i) {
  const std::uint64_t m = inst.num_slots();
  return inst.containers[i].ctype == ContainerType::Type3 ? 1 + (m > 0 ? m - 1 : 0) : 1 + m;
}

}  // namespace

std::uint64_t structured_search_space(const ProblemInstance& inst) {
  std::uint64_t space = 1;
  for (std::size_t i = 0; i < inst.num_containers(); ++i) {
    const std::uint64_t k = options_for(inst, i);
    if (space > kStructuredSearchCap * 16 / k) return kStructuredSearchCap * 16;  // saturate, avoids overflow
    space *= k;
  }
  return space;
}

ExactSolution solve_exact(const ProblemInstance& inst) {
  const std::uint64_t space = structured_search_space(inst);
  if (space > kStructuredSearchCap)
    throw CapacityError("structured search space exceeds " + std::to_string(kStructuredSearchCap) + " options");
  const std::size_t n = inst.num_containers();
  const std::size_t m = inst.num_slots();
  std::vector<std::uint64_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = options_for(inst, i);

  std::vector<Incumbent> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    Incumbent& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t code = 0; code < static_cast<std::int64_t>(space); ++code) {
      Assignment x(n, m);
      auto rest = static_cast<std::uint64_t>(code);
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t option = rest % radix[i];
        rest /= radix[i];
        if (option == 0) continue;
        x.set(i, option - 1);
        if (inst.containers[i].ctype == ContainerType::Type3) x.set(i, option);
      }
      local.offer(inst, std::move(x));
    }
  }
  Incumbent all;
  for (auto& p : partial) all.merge(std::move(p));
  return finish(std::move(all), space);
}

ExactSolution solve_exact_raw(const ProblemInstance& inst) {
  const std::size_t q = inst.num_qubits();
  if (q > kRawSearchQubitCap)
    throw CapacityError("raw enumeration limited to " + std::to_string(kRawSearchQubitCap) + " qubits");
  const std::uint64_t space = std::uint64_t{1} << q;
  std::vector<Incumbent> partial(static_cast<std::size_t>(omp_get_max_threads()));
#pragma omp parallel
  {
    Incumbent& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (std::int64_t s = 0; s < static_cast<std::int64_t>(space); ++s)
      local.offer(inst, Assignment::from_index(static_cast<BasisIndex>(s), inst.num_containers(), inst.num_slots()));
  }
  Incumbent all;
  for (auto& p : partial) all.merge(std::move(p));
  return finish(std::move(all), space);
}

EnergyLandscape enumerate_energies(const ProblemInstance& inst, const PenaltyConfig& cfg) {
  EnergyLandscape out;
  out.table = build_energy_table(inst, cfg);
  out.argmin = out.table.argmin();
  out.min_energy = out.table[out.argmin];
  out.solution = solve_exact(inst);
  out.argmin_is_optimal = out.solution.is_optimal(out.argmin);
  return out;
}

}  // namespace cargoload
