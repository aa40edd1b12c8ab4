#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "axm/femcore.hpp"
#include "axm/mesh.hpp"

namespace axm::test {

inline ModeField random_field(std::size_t nv, int k, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ModeField f(k, nv);
  for (auto& v : f.values)
    for (auto& c : v) c = {u(rng), u(rng)};
  return f;
}

inline ModeField random_constrained(const ConstraintSet& cs, std::mt19937& rng) {
  ModeField f = random_field(cs.num_vertices(), cs.k(), rng);
  cs.apply(f);
  return f;
}

/// A path below a regular file: never readable or creatable, whatever the permissions.
inline std::string unreachable_path(const std::string& name) {
  const auto blocker = std::filesystem::temp_directory_path() / "axm_test_blocker";
  std::ofstream(blocker) << "not a directory\n";
  return (blocker / name).string();
}

}  // namespace axm::test
