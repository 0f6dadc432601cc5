#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "cargoload/model.hpp"

namespace cargoload::testing {

// Two Type1 containers (3 and 5 kG), two slots at -5 m and +5 m, w_max = 5,
// CoG window [-10, 10], shear non-binding. Optima: C1 alone in either slot.
inline ProblemInstance fixture_i1(double r_min = -10.0, double r_max = 10.0, double shear = 100.0) {
  ProblemInstance inst;
  inst.containers = {{0, 3.0, ContainerType::Type1}, {1, 5.0, ContainerType::Type1}};
  inst.slots = {{0, -5.0}, {1, 5.0}};
  inst.w_max = 5.0;
  inst.r_min = r_min;
  inst.r_max = r_max;
  inst.shear = ShearProfile::constant(shear);
  return inst;
}

// Type1 4 kG, Type2 3 kG, Type3 6 kG over slots at -10, 0, +10 m; w_max = 10.
inline ProblemInstance fixture_i2() {
  ProblemInstance inst;
  inst.containers = {{0, 4.0, ContainerType::Type1}, {1, 3.0, ContainerType::Type2}, {2, 6.0, ContainerType::Type3}};
  inst.slots = {{0, -10.0}, {1, 0.0}, {2, 10.0}};
  inst.w_max = 10.0;
  inst.r_min = -10.0;
  inst.r_max = 10.0;
  inst.shear = ShearProfile::constant(100.0);
  return inst;
}

inline Assignment assignment_of(std::size_t n, std::size_t m,
                                std::initializer_list<std::pair<std::size_t, std::size_t>> cells) {
  Assignment x(n, m);
  for (auto [i, j] : cells) x.set(i, j);
  return x;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / (tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace cargoload::testing
