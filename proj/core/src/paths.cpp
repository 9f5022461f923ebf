#include "qwalk/paths.hpp"

#include "qwalk/errors.hpp"

#include <bit>
#include <string>

namespace qwalk {

PathSpace::PathSpace(int steps) : steps_(steps) {
  if (steps < 0 || steps > kMaxSteps)
    throw DomainError("path length n=" + std::to_string(steps) + " outside [0, " + std::to_string(kMaxSteps) + "]");
}

void PathSpace::require(PathIndex j) const {
  if (!contains(j))
    throw DomainError("path index " + std::to_string(j) + " outside Omega_" + std::to_string(steps_));
}

int changes_count(const PathSpace& space, PathIndex j) {
  space.require(j);
  // adjacent unequal bits of 0 alpha_1..alpha_n; the implicit leading 0
  // pairs with alpha_1 through the zero shifted in at the top
  return std::popcount(j ^ (j >> 1));
}

int ones_count(const PathSpace& space, PathIndex j) {
  space.require(j);
  return std::popcount(j);
}

std::vector<int> changes_vector(const PathSpace& space) {
  std::vector<int> out(space.size());
  for (PathIndex j = 0; j < space.size(); ++j) out[j] = std::popcount(j ^ (j >> 1));
  return out;
}

std::vector<int> ones_vector(const PathSpace& space) {
  std::vector<int> out(space.size());
  for (PathIndex j = 0; j < space.size(); ++j) out[j] = std::popcount(j);
  return out;
}

std::array<std::uint64_t, 4> changes_residue_counts(int steps) {
  (void)PathSpace(steps);
  std::array<std::uint64_t, 4> v{1, 0, 0, 0};
  for (int n = 0; n < steps; ++n) {
    const auto prev = v;
    for (int r = 0; r < 4; ++r) v[r] = prev[r] + prev[(r + 3) % 4];
  }
  return v;
}

}  // namespace qwalk
