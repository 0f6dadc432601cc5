#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <random>
#include <string>

#include "cargoload/errors.hpp"
#include "cargoload/sim.hpp"

namespace cargoload {

static_assert(std::endian::native == std::endian::little, "statevector dump assumes a little-endian host");

template <typename Real>
Statevector<Real>::Statevector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0) throw DomainError("statevector needs at least one qubit");
  if (n_qubits > kHardQubitCap)
    throw CapacityError("statevector limited to " + std::to_string(kHardQubitCap) + " qubits, asked for " +
                        std::to_string(n_qubits));
  amps_.assign(std::size_t{1} << n_qubits, Amplitude{0, 0});
  amps_[0] = Amplitude{1, 0};
}

template <typename Real>
long double Statevector<Real>::norm_squared() const {
  long double sum = 0.0L;
  for (const auto& a : amps_) sum += static_cast<long double>(std::norm(a));
  return sum;
}

template <typename Real>
void apply_ry(Statevector<Real>& state, std::size_t q, double theta, Backend backend) {
  if (q >= state.n_qubits())
    throw IndexError("RY target " + std::to_string(q) + " out of range for " + std::to_string(state.n_qubits()) +
                     " qubits");
  if (backend == Backend::Serial)
    kernels::serial::ry(state.amplitudes(), q, theta);
  else
    kernels::ry(state.amplitudes(), q, theta);
}

template <typename Real>
void apply_rzz(Statevector<Real>& state, std::size_t a, std::size_t b, double theta, Backend backend) {
  if (a >= state.n_qubits() || b >= state.n_qubits()) throw IndexError("RZZ target out of range");
  if (a == b) throw DomainError("RZZ needs two distinct qubits");
  if (backend == Backend::Serial)
    kernels::serial::rzz(state.amplitudes(), a, b, theta);
  else
    kernels::rzz(state.amplitudes(), a, b, theta);
}

template <typename Real>
Statevector<Real> run(const CircuitIR& circuit, std::span<const double> theta, Backend backend) {
  if (theta.size() != circuit.parameter_count())
    throw BindingError("circuit expects " + std::to_string(circuit.parameter_count()) + " parameters, got " +
                       std::to_string(theta.size()));
  Statevector<Real> state(circuit.n_qubits);
  for (const auto& g : circuit.gates) {
    const double angle = theta[g.param_index];
    if (g.kind == GateKind::RY)
      apply_ry(state, g.targets[0], angle, backend);
    else
      apply_rzz(state, g.targets[0], g.targets[1], angle, backend);
  }
  return state;
}

template <typename Real>
Distribution probabilities(const Statevector<Real>& state, double floor) {
  Distribution dist;
  dist.n_qubits = state.n_qubits();
  const auto amps = state.amplitudes();
  for (std::size_t s = 0; s < amps.size(); ++s) {
    const double p = std::norm(std::complex<double>(amps[s]));
    if (p >= floor && p > 0.0) dist.outcomes.push_back({s, p});
  }
  return dist;
}

template <typename Real>
std::vector<double> probability_vector(const Statevector<Real>& state) {
  const auto amps = state.amplitudes();
  std::vector<double> p(amps.size());
  for (std::size_t s = 0; s < amps.size(); ++s) p[s] = std::norm(std::complex<double>(amps[s]));
  return p;
}

template <typename Real>
ShotCounts sample(const Statevector<Real>& state, std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw DomainError("need at least one shot");
  const auto amps = state.amplitudes();
  const double total = static_cast<double>(state.norm_squared());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> draws(shots);
  for (auto& u : draws) u = unit(rng) * total;
  std::sort(draws.begin(), draws.end());

  ShotCounts out;
  out.n_qubits = state.n_qubits();
  out.shots = shots;
  std::size_t next = 0;
  double cumulative = 0.0;
  BasisIndex last_nonzero = 0;
  for (std::size_t s = 0; s < amps.size() && next < draws.size(); ++s) {
    const double p = std::norm(std::complex<double>(amps[s]));
    if (p == 0.0) continue;
    last_nonzero = s;
    cumulative += p;
    std::uint64_t hits = 0;
    while (next < draws.size() && draws[next] < cumulative) {
      ++hits;
      ++next;
    }
    if (hits) out.counts[s] += hits;
  }
  // Rounding can leave the top of the CDF a hair short of `total`.
  if (next < draws.size()) out.counts[last_nonzero] += draws.size() - next;
  return out;
}

template <typename Real>
void dump_statevector(const std::filesystem::path& path, const Statevector<Real>& state) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  const std::uint64_t n = state.n_qubits();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (const auto& a : state.amplitudes()) {
    const double pair[2] = {static_cast<double>(a.real()), static_cast<double>(a.imag())};
    out.write(reinterpret_cast<const char*>(pair), sizeof pair);
  }
  if (!out.flush()) throw ConfigError("write failed for " + path.string());
}

StatevectorD read_statevector_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::uint64_t n = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in) throw ConfigError("truncated statevector header");
  StatevectorD state(static_cast<std::size_t>(n));
  auto amps = state.amplitudes();
  for (auto& a : amps) {
    double pair[2];
    in.read(reinterpret_cast<char*>(pair), sizeof pair);
    if (!in) throw ConfigError("truncated statevector body");
    a = {pair[0], pair[1]};
  }
  return state;
}

template class Statevector<double>;
template class Statevector<float>;

#define CARGOLOAD_INSTANTIATE(Real)                                                                          \
  template void apply_ry<Real>(Statevector<Real>&, std::size_t, double, Backend);                            \
  template void apply_rzz<Real>(Statevector<Real>&, std::size_t, std::size_t, double, Backend);              \
  template Statevector<Real> run<Real>(const CircuitIR&, std::span<const double>, Backend);                  \
  template Distribution probabilities<Real>(const Statevector<Real>&, double);                               \
  template std::vector<double> probability_vector<Real>(const Statevector<Real>&);                           \
  template ShotCounts sample<Real>(const Statevector<Real>&, std::uint64_t, std::uint64_t);                  \
  template void dump_statevector<Real>(const std::filesystem::path&, const Statevector<Real>&);

CARGOLOAD_INSTANTIATE(double)
CARGOLOAD_INSTANTIATE(float)

#undef CARGOLOAD_INSTANTIATE

}  // namespace cargoload
