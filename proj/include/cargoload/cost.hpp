#pragma once

#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "cargoload/constraints.hpp"
#include "cargoload/distribution.hpp"
#include "cargoload/model.hpp"

namespace cargoload {

inline constexpr double kNormalizationTolerance = 1e-9;

struct CvarParams {
  double epsilon = 0.25;
};

// Throws DomainError unless 0 < epsilon <= 1.
void check_epsilon(double epsilon);

// -total_weight + total_penalty, plus p_zero for the empty load. Lower is better.
double bitstring_energy(const ProblemInstance& inst, const Bitstring& b, const PenaltyConfig& cfg);
double state_energy(const ProblemInstance& inst, BasisIndex state, const PenaltyConfig& cfg);

// Throws NormalizationError when probabilities do not sum to 1 within 1e-9.
void check_normalized(const Distribution& dist);

double expectation(const Distribution& dist, const ProblemInstance& inst, const PenaltyConfig& cfg);

// Mean of the ceil(epsilon * K) lowest of K sampled energies.
double cvar_from_samples(std::span<const double> energies, double epsilon);

struct WeightedEnergy {
  double energy = 0.0;
  double probability = 0.0;
};

// Left epsilon-tail mean of a discrete energy distribution; the state that
// straddles the epsilon boundary contributes only its in-tail mass.
double cvar_weighted(std::vector<WeightedEnergy> tail, double epsilon);

double cvar_from_distribution(const Distribution& dist, const ProblemInstance& inst, const PenaltyConfig& cfg,
                              double epsilon);

// Lazily populated energy memo for one optimization run. Safe for concurrent
// lookups; racing inserts of the same key store the same value.
class EnergyCache {
 public:
  EnergyCache(const ProblemInstance& inst, const PenaltyConfig& cfg) : inst_(&inst), cfg_(cfg) {}

  double operator()(BasisIndex state);
  std::size_t size() const;

 private:
  const ProblemInstance* inst_;
  PenaltyConfig cfg_;
  mutable std::mutex mu_;
  std::unordered_map<BasisIndex, double> memo_;
};

// Dense energy table over all 2^(n*m) basis states.
class EnergyTable {
 public:
  EnergyTable() = default;
  EnergyTable(std::size_t n_qubits, std::vector<double> energies);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return energies_.size(); }
  double operator[](BasisIndex state) const { return energies_[state]; }
  const std::vector<double>& energies() const { return energies_; }

  // Basis states ordered by ascending energy (ties by index); built on demand.
  const std::vector<BasisIndex>& ascending() const;
  BasisIndex argmin() const { return ascending().front(); }

  // Exact CVaR of the distribution given as a dense probability vector.
  double cvar(std::span<const double> probabilities, double epsilon) const;

 private:
  std::size_t n_qubits_ = 0;
  std::vector<double> energies_;
  mutable std::vector<BasisIndex> order_;
};

// Tables larger than 2^24 entries throw CapacityError.
inline constexpr std::size_t kEnergyTableQubitCap = 24;

EnergyTable build_energy_table(const ProblemInstance& inst, const PenaltyConfig& cfg);
EnergyTable build_energy_table_serial(const ProblemInstance& inst, const PenaltyConfig& cfg);

}  // namespace cargoload
