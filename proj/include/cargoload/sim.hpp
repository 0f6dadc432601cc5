#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cargoload/ansatz.hpp"
#include "cargoload/distribution.hpp"
#include "cargoload/model.hpp"

namespace cargoload {

// In-place gate kernels over a dense amplitude array. Basis index bit q is
// qubit q. The parallel versions split the index range across OpenMP
// threads; each index (or RY index pair) is owned by exactly one thread.
namespace kernels {

template <typename Real>
void ry(std::span<std::complex<Real>> amps, std::size_t q, double theta);
template <typename Real>
void rzz(std::span<std::complex<Real>> amps, std::size_t a, std::size_t b, double theta);

// Single-threaded reference versions, kept for cross-checking and benchmarks.
namespace serial {
template <typename Real>
void ry(std::span<std::complex<Real>> amps, std::size_t q, double theta);
template <typename Real>
void rzz(std::span<std::complex<Real>> amps, std::size_t a, std::size_t b, double theta);
}  // namespace serial

}  // namespace kernels

enum class Backend { Parallel, Serial };

template <typename Real>
class Statevector {
 public:
  using Amplitude = std::complex<Real>;

  // |0...0> on n qubits. Throws CapacityError above kHardQubitCap.
  explicit Statevector(std::size_t n_qubits);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::span<Amplitude> amplitudes() { return amps_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  Amplitude operator[](BasisIndex s) const { return amps_[s]; }

  // Sum of |amp|^2 accumulated in long double.
  long double norm_squared() const;

 private:
  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

using StatevectorD = Statevector<double>;
using StatevectorF = Statevector<float>;

template <typename Real>
void apply_ry(Statevector<Real>& state, std::size_t q, double theta, Backend backend = Backend::Parallel);
template <typename Real>
void apply_rzz(Statevector<Real>& state, std::size_t a, std::size_t b, double theta,
               Backend backend = Backend::Parallel);

// Applies the circuit's gates in order to |0...0>. Throws BindingError when
// the parameter count does not match.
template <typename Real = double>
Statevector<Real> run(const CircuitIR& circuit, std::span<const double> theta, Backend backend = Backend::Parallel);

inline constexpr double kProbabilityFloor = 1e-12;

// Basis states with probability >= floor, in index order.
template <typename Real>
Distribution probabilities(const Statevector<Real>& state, double floor = kProbabilityFloor);

// |amp|^2 for every basis state.
template <typename Real>
std::vector<double> probability_vector(const Statevector<Real>& state);

// Multinomial draw of `shots` measurements by inverse CDF over the basis
// ordering, deterministic in seed. Throws DomainError for shots == 0.
template <typename Real>
ShotCounts sample(const Statevector<Real>& state, std::uint64_t shots, std::uint64_t seed);

// Diagnostic dump: u64 n_qubits, then (re, im) float64 pairs in basis order,
// all little-endian.
template <typename Real>
void dump_statevector(const std::filesystem::path& path, const Statevector<Real>& state);
StatevectorD read_statevector_dump(const std::filesystem::path& path);

}  // namespace cargoload
