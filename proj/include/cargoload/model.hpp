#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cargoload {

// Simulator qubit budgets. Instances above the hard cap are rejected outright.
inline constexpr std::size_t kDefaultQubitBudget = 24;
inline constexpr std::size_t kHardQubitCap = 28;

// Computational basis index: bit k is qubit k, which is assignment cell
// (k / m, k % m).
using BasisIndex = std::uint64_t;

enum class ContainerType : int { Type1 = 1, Type2 = 2, Type3 = 3 };

// Fraction of a slot a container fills (per occupied slot).
constexpr double size_factor(ContainerType t) {
  return t == ContainerType::Type2 ? 0.5 : 1.0;
}

// Maximum number of slots a container may occupy.
constexpr int slot_bound(ContainerType t) {
  return t == ContainerType::Type3 ? 2 : 1;
}

struct Container {
  int id = 0;
  double weight = 0.0;  // kG
  ContainerType ctype = ContainerType::Type1;
};

struct Slot {
  int index = 0;
  double distance = 0.0;  // m from aircraft center, negative = forward
};

struct ShearKnot {
  double distance = 0.0;
  double limit = 0.0;  // kG
};

// Piecewise-linear maximum shear profile with flat extrapolation beyond the
// outermost knots.
class ShearProfile {
 public:
  ShearProfile() = default;
  explicit ShearProfile(std::vector<ShearKnot> knots) : knots_(std::move(knots)) {}

  static ShearProfile constant(double limit) { return ShearProfile({{0.0, limit}}); }

  double at(double distance) const;
  const std::vector<ShearKnot>& knots() const { return knots_; }

 private:
  std::vector<ShearKnot> knots_;
};

struct ProblemInstance {
  std::vector<Container> containers;
  std::vector<Slot> slots;
  double w_max = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  ShearProfile shear;

  std::size_t num_containers() const { return containers.size(); }
  std::size_t num_slots() const { return slots.size(); }
  std::size_t num_qubits() const { return containers.size() * slots.size(); }

  // Weight carried by a single container-slot edge: w_i / v_i, so a Type3
  // container spread over its two slots counts once.
  double effective_weight(std::size_t container) const {
    const auto& c = containers[container];
    return c.weight / slot_bound(c.ctype);
  }

  double total_container_weight() const;
};

// n x m binary loading matrix, x(i, j) = 1 when container i sits in slot j.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::size_t n, std::size_t m) : n_(n), m_(m), cells_(n * m, 0) {}

  static Assignment from_index(BasisIndex index, std::size_t n, std::size_t m);

  std::size_t rows() const { return n_; }
  std::size_t cols() const { return m_; }

  bool at(std::size_t i, std::size_t j) const { return cells_[i * m_ + j] != 0; }
  void set(std::size_t i, std::size_t j, bool v = true) { cells_[i * m_ + j] = v ? 1 : 0; }

  std::size_t row_count(std::size_t i) const;
  bool empty() const;
  BasisIndex to_index() const;

  bool operator==(const Assignment&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Length n*m qubit string, qubit k = i*m + j. Character 0 of the printed
// form is qubit 0.
class Bitstring {
 public:
  Bitstring() = default;
  explicit Bitstring(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  static Bitstring parse(std::string_view text);
  static Bitstring from_index(BasisIndex index, std::size_t length);

  std::size_t size() const { return bits_.size(); }
  bool operator[](std::size_t k) const { return bits_[k] != 0; }
  bool all_zero() const;

  BasisIndex to_index() const;
  std::string str() const;

  bool operator==(const Bitstring&) const = default;
  auto operator<=>(const Bitstring&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

std::string basis_string(BasisIndex index, std::size_t length);

std::vector<std::string> validate_instance(const ProblemInstance& inst,
                                           std::size_t qubit_budget = kHardQubitCap);

// Throws DimensionError when x does not have the instance's n x m shape.
void check_shape(const ProblemInstance& inst, const Assignment& x);

Bitstring encode_assignment(const Assignment& x);
Bitstring encode_assignment(const ProblemInstance& inst, const Assignment& x);
Assignment decode_bitstring(const Bitstring& b, std::size_t n, std::size_t m);

double total_weight(const ProblemInstance& inst, const Assignment& x);

struct GeneratorConfig {
  double weight_min = 1.0;
  double weight_max = 8.0;
  bool integer_weights = true;
  std::array<double, 3> type_mix{0.6, 0.2, 0.2};  // Type1, Type2, Type3
  double capacity_fraction = 0.6;
  double slot_spacing = 10.0;
  // Allowed CoG window as a fraction of the outermost slot distance.
  double cog_window = 1.0;
  // Shear limit at the center as a fraction of total weight, and the ratio of
  // the outermost-slot limit to the center limit (1.0 = constant profile).
  double shear_scale = 1.0;
  double shear_taper = 1.0;
};

ProblemInstance generate_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                  const GeneratorConfig& cfg = {});

}  // namespace cargoload
