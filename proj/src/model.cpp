#include "cargoload/model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cargoload/errors.hpp"

namespace cargoload {

double ShearProfile::at(double distance) const {
  if (knots_.empty()) return 0.0;
  if (distance <= knots_.front().distance) return knots_.front().limit;
  if (distance >= knots_.back().distance) return knots_.back().limit;
  auto hi = std::upper_bound(knots_.begin(), knots_.end(), distance,
                             [](double d, const ShearKnot& k) { return d < k.distance; });
  auto lo = std::prev(hi);
  const double t = (distance - lo->distance) / (hi->distance - lo->distance);
  return lo->limit + t * (hi->limit - lo->limit);
}

double ProblemInstance::total_container_weight() const {
  double sum = 0.0;
  for (const auto& c : containers) sum += c.weight;
  return sum;
}

Assignment Assignment::from_index(BasisIndex index, std::size_t n, std::size_t m) {
  Assignment x(n, m);
  for (std::size_t k = 0; k < n * m; ++k) x.cells_[k] = static_cast<std::uint8_t>((index >> k) & 1U);
  return x;
}

std::size_t Assignment::row_count(std::size_t i) const {
  std::size_t count = 0;
  for (std::size_t j = 0; j < m_; ++j) count += cells_[i * m_ + j];
  return count;
}

bool Assignment::empty() const {
  return std::all_of(cells_.begin(), cells_.end(), [](std::uint8_t c) { return c == 0; });
}

BasisIndex Assignment::to_index() const {
  BasisIndex index = 0;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k]) index |= BasisIndex{1} << k;
  return index;
}

Bitstring Bitstring::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c == '0' || c == '1')
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ' ' && c != '_')
      throw ConfigError("invalid bitstring character '" + std::string(1, c) + "'");
  }
  return Bitstring(std::move(bits));
}

Bitstring Bitstring::from_index(BasisIndex index, std::size_t length) {
  std::vector<std::uint8_t> bits(length);
  for (std::size_t k = 0; k < length; ++k) bits[k] = static_cast<std::uint8_t>((index >> k) & 1U);
  return Bitstring(std::move(bits));
}

bool Bitstring::all_zero() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint8_t b) { return b == 0; });
}

BasisIndex Bitstring::to_index() const {
  if (bits_.size() > 64) throw CapacityError("bitstring longer than 64 qubits");
  BasisIndex index = 0;
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k]) index |= BasisIndex{1} << k;
  return index;
}

std::string Bitstring::str() const {
  std::string s(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k]) s[k] = '1';
  return s;
}

std::string basis_string(BasisIndex index, std::size_t length) {
  std::string s(length, '0');
  for (std::size_t k = 0; k < length; ++k)
    if ((index >> k) & 1U) s[k] = '1';
  return s;
}

std::vector<std::string> validate_instance(const ProblemInstance& inst, std::size_t qubit_budget) {
  std::vector<std::string> issues;
  const std::size_t n = inst.num_containers();
  const std::size_t m = inst.num_slots();
  if (n == 0) issues.emplace_back("at least one container is required");
  if (m == 0) issues.emplace_back("at least one slot is required");
  if (n * m > qubit_budget) {
    std::ostringstream msg;
    msg << "instance needs " << n * m << " qubits, budget is " << qubit_budget;
    issues.push_back(msg.str());
  }
  if (!(inst.w_max > 0.0) || !std::isfinite(inst.w_max)) issues.emplace_back("w_max must be positive");
  if (!std::isfinite(inst.r_min) || !std::isfinite(inst.r_max))
    issues.emplace_back("r_min and r_max must be finite");
  else if (inst.r_min > inst.r_max)
    issues.emplace_back("r_min exceeds r_max");

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = inst.containers[i];
    if (c.id != static_cast<int>(i))
      issues.push_back("container " + std::to_string(i) + " has id " + std::to_string(c.id));
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      issues.push_back("container " + std::to_string(i) + " weight must be positive");
    const int t = static_cast<int>(c.ctype);
    if (t < 1 || t > 3) issues.push_back("container " + std::to_string(i) + " has unknown type");
  }
  for (std::size_t j = 0; j < m; ++j) {
    const auto& s = inst.slots[j];
    if (s.index != static_cast<int>(j))
      issues.push_back("slot " + std::to_string(j) + " has index " + std::to_string(s.index));
    if (!std::isfinite(s.distance)) issues.push_back("slot " + std::to_string(j) + " distance is not finite");
    if (j > 0 && !(s.distance > inst.slots[j - 1].distance))
      issues.push_back("slot distances must be strictly increasing (slot " + std::to_string(j) + ")");
  }

  const auto& knots = inst.shear.knots();
  if (knots.empty()) issues.emplace_back("shear profile needs at least one knot");
  for (std::size_t k = 0; k < knots.size(); ++k) {
    if (!(knots[k].limit >= 0.0)) issues.push_back("shear limit at knot " + std::to_string(k) + " is negative");
    if (k > 0 && !(knots[k].distance > knots[k - 1].distance))
      issues.push_back("shear knot distances must be strictly increasing (knot " + std::to_string(k) + ")");
  }
  return issues;
}

void check_shape(const ProblemInstance& inst, const Assignment& x) {
  if (x.rows() != inst.num_containers() || x.cols() != inst.num_slots()) {
    std::ostringstream msg;
    msg << "assignment is " << x.rows() << "x" << x.cols() << ", instance is " << inst.num_containers()
        << "x" << inst.num_slots();
    throw DimensionError(msg.str());
  }
}

Bitstring encode_assignment(const Assignment& x) {
  std::vector<std::uint8_t> bits(x.rows() * x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) bits[i * x.cols() + j] = x.at(i, j) ? 1 : 0;
  return Bitstring(std::move(bits));
}

Bitstring encode_assignment(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  return encode_assignment(x);
}

Assignment decode_bitstring(const Bitstring& b, std::size_t n, std::size_t m) {
  if (b.size() != n * m) {
    std::ostringstream msg;
    msg << "bitstring has " << b.size() << " bits, expected " << n * m;
    throw DimensionError(msg.str());
  }
  Assignment x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x.set(i, j, b[i * m + j]);
  return x;
}

double total_weight(const ProblemInstance& inst, const Assignment& x) {
  check_shape(inst, x);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double w = inst.effective_weight(i);
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (x.at(i, j)) sum += w;
  }
  return sum;
}

namespace {

void check_generator_config(std::size_t n, std::size_t m, const GeneratorConfig& cfg) {
  if (n == 0 || m == 0) throw ConfigError("generator needs n >= 1 and m >= 1");
  if (!(cfg.weight_min > 0.0) || !(cfg.weight_max >= cfg.weight_min))
    throw ConfigError("weight range must satisfy 0 < weight_min <= weight_max");
  if (cfg.integer_weights && std::ceil(cfg.weight_min) > std::floor(cfg.weight_max))
    throw ConfigError("weight range contains no integer");
  double mix = 0.0;
  for (double p : cfg.type_mix) {
    if (!(p >= 0.0)) throw ConfigError("type mix entries must be non-negative");
    mix += p;
  }
  if (!(mix > 0.0)) throw ConfigError("type mix must have positive mass");
  if (!(cfg.capacity_fraction > 0.0)) throw ConfigError("capacity_fraction must be positive");
  if (!(cfg.slot_spacing > 0.0)) throw ConfigError("slot_spacing must be positive");
  if (!(cfg.cog_window >= 0.0)) throw ConfigError("cog_window must be non-negative");
  if (!(cfg.shear_scale >= 0.0) || !(cfg.shear_taper >= 0.0))
    throw ConfigError("shear_scale and shear_taper must be non-negative");
}

}  // namespace

ProblemInstance generate_instance(std::uint64_t seed, std::size_t n, std::size_t m,
                                  const GeneratorConfig& cfg) {
  check_generator_config(n, m, cfg);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> type_dist(cfg.type_mix.begin(), cfg.type_mix.end());

  ProblemInstance inst;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w;
    if (cfg.integer_weights) {
      std::uniform_int_distribution<int> dist(static_cast<int>(std::ceil(cfg.weight_min)),
                                              static_cast<int>(std::floor(cfg.weight_max)));
      w = dist(rng);
    } else {
      std::uniform_real_distribution<double> dist(cfg.weight_min, cfg.weight_max);
      w = dist(rng);
    }
    const auto t = static_cast<ContainerType>(type_dist(rng) + 1);
    inst.containers.push_back({static_cast<int>(i), w, t});
    total += w;
  }

  const double half_span = 0.5 * static_cast<double>(m - 1);
  for (std::size_t j = 0; j < m; ++j)
    inst.slots.push_back({static_cast<int>(j), (static_cast<double>(j) - half_span) * cfg.slot_spacing});

  // Whole-kG capacity keeps every overweight load at least 1 kG over the limit.
  inst.w_max = cfg.capacity_fraction * total;
  if (cfg.integer_weights && std::floor(inst.w_max) > 0.0) inst.w_max = std::floor(inst.w_max);

  const double reach = half_span * cfg.slot_spacing * cfg.cog_window;
  inst.r_min = -reach;
  inst.r_max = reach;

  // One knot per slot, tapering linearly from the center to the outermost
  // slot. Whole-kG weights put every shear load on a 0.25 kG grid; limits on
  // the same grid keep any violation at 0.25 kG or more.
  const double center = cfg.shear_scale * total;
  const double outer = half_span * cfg.slot_spacing;
  std::vector<ShearKnot> knots;
  for (const auto& slot : inst.slots) {
    const double frac = outer > 0.0 ? std::abs(slot.distance) / outer : 0.0;
    double limit = center * (1.0 - (1.0 - cfg.shear_taper) * frac);
    if (cfg.integer_weights) limit = std::max(0.25, std::round(limit * 4.0) / 4.0);
    knots.push_back({slot.distance, limit});
  }
  inst.shear = ShearProfile(std::move(knots));
  return inst;
}

}  // namespace cargoload
