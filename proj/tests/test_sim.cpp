#include <cmath>
#include <numbers>
#include <random>

#include "cargoload/errors.hpp"
#include "cargoload/sim.hpp"
#include "doctest.h"
#include "support/dense_reference.hpp"
#include "support/fixtures.hpp"

using namespace cargoload;
using cargoload::testing::DenseReference;
using cargoload::testing::random_circuit;

namespace {

constexpr double kPi = std::numbers::pi;

// Random normalized state, built by scrambling |0..0> with RY and RZZ.
StatevectorD scrambled(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto rc = random_circuit(n, 6 * n, rng);
  return run<double>(rc.circuit, rc.theta);
}

double max_deviation(const StatevectorD& a, const StatevectorD& b) {
  double worst = 0.0;
  for (std::size_t s = 0; s < a.size(); ++s) worst = std::max(worst, std::abs(a[s] - b[s]));
  return worst;
}

}  // namespace

TEST_CASE("RY on single qubits") {
  StatevectorD one(1);
  apply_ry(one, 0, kPi);
  CHECK(std::abs(one[0]) < 1e-12);
  CHECK(std::abs(one[1] - std::complex<double>(1, 0)) < 1e-12);

  StatevectorD half(1);
  apply_ry(half, 0, kPi / 2);
  CHECK(std::abs(half[0] - std::complex<double>(M_SQRT1_2, 0)) < 1e-12);
  CHECK(std::abs(half[1] - std::complex<double>(M_SQRT1_2, 0)) < 1e-12);
  auto p = probabilities(half);
  REQUIRE(p.outcomes.size() == 2);
  CHECK(p.outcomes[0].probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p.outcomes[1].probability == doctest::Approx(0.5).epsilon(1e-12));

  auto s = scrambled(4, 1);
  auto t = s;
  apply_ry(t, 2, 0.0);
  CHECK(max_deviation(s, t) < 1e-12);

  CHECK_THROWS_AS(apply_ry(t, 4, 0.1), IndexError);
}

TEST_CASE("RY(theta) RY(-theta) is the identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto s = scrambled(5, seed);
    auto t = s;
    apply_ry(t, seed % 5, 0.37 * static_cast<double>(seed + 1));
    apply_ry(t, seed % 5, -0.37 * static_cast<double>(seed + 1));
    CHECK(max_deviation(s, t) < 1e-12);
  }
}

TEST_CASE("RZZ is diagonal") {
  auto s = scrambled(5, 4);
  auto t = s;
  apply_rzz(t, 0, 3, 1.234);
  for (std::size_t k = 0; k < s.size(); ++k) CHECK(std::abs(std::abs(s[k]) - std::abs(t[k])) < 1e-12);

  auto u = s;
  apply_rzz(u, 1, 4, 0.0);
  CHECK(max_deviation(s, u) < 1e-12);

  StatevectorD basis(2);
  apply_rzz(basis, 0, 1, 0.9);
  CHECK(std::norm(basis[0]) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(apply_rzz(u, 2, 2, 0.1), DomainError);
  CHECK_THROWS_AS(apply_rzz(u, 0, 5, 0.1), IndexError);
}

TEST_CASE("RZZ(pi) flips the relative phase of |00> and |01>") {
  // Qubit 0 in (|0> + |1>)/sqrt2, qubit 1 in |0>. Without the phase a second
  // RY(-pi/2) returns qubit 0 to |0>; with it the state lands on |1>.
  StatevectorD st(2);
  apply_ry(st, 0, kPi / 2);
  apply_rzz(st, 0, 1, kPi);
  apply_ry(st, 0, -kPi / 2);
  auto p = probability_vector(st);
  CHECK(p[0] < 1e-12);
  CHECK(p[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("run binds parameters in gate order") {
  auto c = build_circuit(4, 2, Entanglement::Ring, true);
  std::vector<double> zeros(c.parameter_count(), 0.0);
  auto s = run<double>(c, zeros);
  CHECK(std::abs(s[0] - std::complex<double>(1, 0)) < 1e-15);

  auto small = build_circuit(2, 1, Entanglement::Ladder, true);
  auto r = run<double>(small, random_parameters(small.parameter_count(), 3));
  CHECK(std::abs(static_cast<double>(r.norm_squared()) - 1.0) < 1e-9);

  CHECK_THROWS_AS(run<double>(c, std::vector<double>(3, 0.0)), BindingError);
}

TEST_CASE("RZZ angles are 4 pi periodic") {
  auto c = build_circuit(5, 2, Entanglement::Ring, true);
  auto theta = random_parameters(c.parameter_count(), 9);
  auto shifted = theta;
  for (const auto& g : c.gates)
    if (g.kind == GateKind::RZZ) shifted[g.param_index] += 4 * kPi;
  auto a = probability_vector(run<double>(c, theta));
  auto b = probability_vector(run<double>(c, shifted));
  for (std::size_t s = 0; s < a.size(); ++s) CHECK(std::abs(a[s] - b[s]) < 1e-9);
}

TEST_CASE("simulator matches the dense-matrix reference") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 6;
    auto rc = random_circuit(n, 4 * n + 3, rng);
    DenseReference ref(n);
    ref.run(rc.circuit, rc.theta);
    auto got = run<double>(rc.circuit, rc.theta);
    for (std::size_t s = 0; s < got.size(); ++s) worst = std::max(worst, std::abs(got[s] - ref.state()[s]));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
  std::mt19937_64 rng(77);
  for (std::size_t n : {3, 8, 13}) {
    auto rc = random_circuit(n, 60, rng);
    auto par = run<double>(rc.circuit, rc.theta, Backend::Parallel);
    auto ser = run<double>(rc.circuit, rc.theta, Backend::Serial);
    for (std::size_t s = 0; s < par.size(); ++s) REQUIRE(par[s] == ser[s]);
    auto parf = run<float>(rc.circuit, rc.theta, Backend::Parallel);
    auto serf = run<float>(rc.circuit, rc.theta, Backend::Serial);
    for (std::size_t s = 0; s < parf.size(); ++s) REQUIRE(parf[s] == serf[s]);
  }
}

TEST_CASE("norm survives ten thousand random gates") {
  std::mt19937_64 rng(31);
  auto rc = random_circuit(10, 10000, rng);
  auto st = run<double>(rc.circuit, rc.theta);
  CHECK(std::abs(static_cast<double>(st.norm_squared()) - 1.0) < 1e-9);
}

TEST_CASE("statevector size and capacity") {
  StatevectorD st(12);
  CHECK(st.size() == 4096);
  CHECK_THROWS_AS(StatevectorD(kHardQubitCap + 1), CapacityError);
  CHECK_THROWS_AS(StatevectorD(0), DomainError);
}

TEST_CASE("probabilities drop negligible states and sum to one") {
  StatevectorD zero(3);
  auto p = probabilities(zero);
  REQUIRE(p.outcomes.size() == 1);
  CHECK(p.outcomes[0].state == 0);
  CHECK(p.outcomes[0].probability == 1.0);

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto d = probabilities(scrambled(6, seed));
    CHECK(std::abs(d.total() - 1.0) < 1e-9);
    for (const auto& o : d.outcomes) CHECK(o.probability >= kProbabilityFloor);
  }
}

TEST_CASE("sampling") {
  StatevectorD point(3);
  apply_ry(point, 1, kPi);
  auto counts = sample(point, 1000, 5);
  REQUIRE(counts.counts.size() == 1);
  CHECK(counts.counts.at(2) == 1000);
  CHECK(counts.shots == 1000);

  StatevectorD uniform(2);
  apply_ry(uniform, 0, kPi / 2);
  apply_ry(uniform, 1, kPi / 2);
  const std::uint64_t shots = 1'000'000;
  auto u = sample(uniform, shots, 17);
  const double sigma = std::sqrt(shots * 0.25 * 0.75);
  std::uint64_t total = 0;
  for (BasisIndex s = 0; s < 4; ++s) {
    CHECK(std::abs(static_cast<double>(u.counts[s]) - 250000.0) < 4 * sigma);
    total += u.counts[s];
  }
  CHECK(total == shots);

  auto again = sample(uniform, shots, 17);
  CHECK(again.counts == u.counts);
  CHECK(sample(uniform, 1, 3).counts.size() == 1);
  CHECK_THROWS_AS(sample(uniform, 0, 3), DomainError);
}

TEST_CASE("single precision tracks double precision") {
  auto c = build_circuit(12, 2, Entanglement::Ring, false);
  auto theta = random_parameters(c.parameter_count(), 4);
  auto d = run<double>(c, theta);
  auto f = run<float>(c, theta);
  CHECK(std::abs(static_cast<double>(f.norm_squared()) - 1.0) < 1e-5);
  double worst = 0.0;
  for (std::size_t s = 0; s < d.size(); ++s)
    worst = std::max(worst, std::abs(d[s] - std::complex<double>(f[s])));
  CHECK(worst < 1e-5);
}

TEST_CASE("statevector dump round trip") {
  cargoload::testing::TempDir dir("dump");
  auto st = scrambled(5, 8);
  dump_statevector(dir / "sv.bin", st);
  CHECK(std::filesystem::file_size(dir / "sv.bin") == 8 + 32 * 16);
  auto back = read_statevector_dump(dir / "sv.bin");
  CHECK(back.n_qubits() == 5);
  for (std::size_t s = 0; s < st.size(); ++s) CHECK(back[s] == st[s]);

  auto f = run<float>(build_circuit(3, 1, Entanglement::Ring, true), random_parameters(9, 1));
  dump_statevector(dir / "svf.bin", f);
  auto fb = read_statevector_dump(dir / "svf.bin");
  for (std::size_t s = 0; s < f.size(); ++s) CHECK(fb[s] == std::complex<double>(f[s]));
}
