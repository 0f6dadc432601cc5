#include "cargoload/cost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cargoload/errors.hpp"

namespace cargoload {

void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw DomainError("CVaR epsilon must lie in (0, 1], got " + std::to_string(epsilon));
}

double state_energy(const ProblemInstance& inst, BasisIndex state, const PenaltyConfig& cfg) {
  const auto x = Assignment::from_index(state, inst.num_containers(), inst.num_slots());
  double e = -total_weight(inst, x) + total_penalty(inst, x, cfg);
  if (state == 0) e += cfg.p_zero;
  return e;
}

double bitstring_energy(const ProblemInstance& inst, const Bitstring& b, const PenaltyConfig& cfg) {
  const auto x = decode_bitstring(b, inst.num_containers(), inst.num_slots());
  double e = -total_weight(inst, x) + total_penalty(inst, x, cfg);
  if (b.all_zero()) e += cfg.p_zero;
  return e;
}

void check_normalized(const Distribution& dist) {
  const double total = dist.total();
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "distribution sums to " << total;
    throw NormalizationError(msg.str());
  }
}

double expectation(const Distribution& dist, const ProblemInstance& inst, const PenaltyConfig& cfg) {
  check_normalized(dist);
  double sum = 0.0;
  for (const auto& o : dist.outcomes) sum += o.probability * state_energy(inst, o.state, cfg);
  return sum;
}

double cvar_from_samples(std::span<const double> energies, double epsilon) {
  check_epsilon(epsilon);
  if (energies.empty()) throw DomainError("CVaR of an empty sample");
  const std::size_t k = energies.size();
  // Guard against epsilon*K landing a hair above an integer.
  auto tail = static_cast<std::size_t>(std::ceil(epsilon * static_cast<double>(k) - 1e-9));
  tail = std::clamp<std::size_t>(tail, 1, k);
  std::vector<double> sorted(energies.begin(), energies.end());
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(tail), sorted.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < tail; ++i) sum += sorted[i];
  return sum / static_cast<double>(tail);
}

double cvar_weighted(std::vector<WeightedEnergy> tail, double epsilon) {
  check_epsilon(epsilon);
  if (tail.empty()) throw DomainError("CVaR of an empty distribution");
  std::stable_sort(tail.begin(), tail.end(),
                   [](const WeightedEnergy& a, const WeightedEnergy& b) { return a.energy < b.energy; });
  double mass = 0.0;
  double sum = 0.0;
  for (const auto& w : tail) {
    const double take = std::min(w.probability, epsilon - mass);
    if (take <= 0.0) break;
    sum += take * w.energy;
    mass += take;
  }
  return sum / epsilon;
}

double cvar_from_distribution(const Distribution& dist, const ProblemInstance& inst, const PenaltyConfig& cfg,
                              double epsilon) {
  check_epsilon(epsilon);
  check_normalized(dist);
  if (epsilon == 1.0) return expectation(dist, inst, cfg);
  std::vector<WeightedEnergy> tail;
  tail.reserve(dist.outcomes.size());
  for (const auto& o : dist.outcomes) tail.push_back({state_energy(inst, o.state, cfg), o.probability});
  return cvar_weighted(std::move(tail), epsilon);
}

double EnergyCache::operator()(BasisIndex state) {
  {
    std::lock_guard lock(mu_);
    auto it = memo_.find(state);
    if (it != memo_.end()) return it->second;
  }
  const double e = state_energy(*inst_, state, cfg_);
  std::lock_guard lock(mu_);
  memo_.emplace(state, e);
  return e;
}

std::size_t EnergyCache::size() const {
  std::lock_guard lock(mu_);
  return memo_.size();
}

EnergyTable::EnergyTable(std::size_t n_qubits, std::vector<double> energies)
    : n_qubits_(n_qubits), energies_(std::move(energies)) {
  if (energies_.size() != (std::size_t{1} << n_qubits_))
    throw DimensionError("energy table size does not match 2^n_qubits");
}

const std::vector<BasisIndex>& EnergyTable::ascending() const {
  if (order_.size() != energies_.size()) {
    order_.resize(energies_.size());
    std::iota(order_.begin(), order_.end(), BasisIndex{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](BasisIndex a, BasisIndex b) { return energies_[a] < energies_[b]; });
  }
  return order_;
}

double EnergyTable::cvar(std::span<const double> probabilities, double epsilon) const {
  check_epsilon(epsilon);
  if (probabilities.size() != energies_.size())
    throw DimensionError("probability vector does not match the energy table");
  const double total = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (std::abs(total - 1.0) > kNormalizationTolerance) throw NormalizationError("probabilities do not sum to 1");
  double mass = 0.0;
  double sum = 0.0;
  for (BasisIndex s : ascending()) {
    const double take = std::min(probabilities[s], epsilon - mass);
    if (take <= 0.0) {
      if (mass >= epsilon) break;
      continue;
    }
    sum += take * energies_[s];
    mass += take;
  }
  return sum / epsilon;
}

namespace {

void check_table_size(const ProblemInstance& inst) {
  if (inst.num_qubits() > kEnergyTableQubitCap)
    throw CapacityError("energy table limited to " + std::to_string(kEnergyTableQubitCap) + " qubits");
}

}  // namespace

EnergyTable build_energy_table(const ProblemInstance& inst, const PenaltyConfig& cfg) {
  check_table_size(inst);
  const std::size_t n = inst.num_qubits();
  const auto size = static_cast<std::int64_t>(std::size_t{1} << n);
  std::vector<double> energies(static_cast<std::size_t>(size));
#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < size; ++s)
    energies[static_cast<std::size_t>(s)] = state_energy(inst, static_cast<BasisIndex>(s), cfg);
  return EnergyTable(n, std::move(energies));
}

EnergyTable build_energy_table_serial(const ProblemInstance& inst, const PenaltyConfig& cfg) {
  check_table_size(inst);
  const std::size_t n = inst.num_qubits();
  std::vector<double> energies(std::size_t{1} << n);
  for (std::size_t s = 0; s < energies.size(); ++s) energies[s] = state_energy(inst, s, cfg);
  return EnergyTable(n, std::move(energies));
}

}  // namespace cargoload
