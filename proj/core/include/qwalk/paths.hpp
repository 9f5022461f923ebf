#pragma once

// n-paths of the two-site walk. A path alpha_0 alpha_1 ... alpha_n with
// alpha_0 = 0 is stored as the integer whose n-bit big-endian binary digits
// are alpha_1 ... alpha_n, so path i is literally "i in binary". The leading
// alpha_0 is implicit.

#include <array>
#include <cstdint>
#include <vector>

namespace qwalk {

using PathIndex = std::uint64_t;

/// Largest supported number of time steps. Keeps every amplitude sum over
/// Omega_n inside a signed 64-bit word.
inline constexpr int kMaxSteps = 62;

class PathSpace {
 public:
  /// Omega_n for 0 <= n <= kMaxSteps. Omega_0 = {0} is admitted so that the
  /// time-0 cylinder approximants have a home.
  explicit PathSpace(int steps);

  int steps() const { return steps_; }
  std::uint64_t size() const { return std::uint64_t{1} << steps_; }
  bool contains(PathIndex j) const { return j < size(); }
  /// Throws DomainError when j is not a path of this space.
  void require(PathIndex j) const;

  friend bool operator==(const PathSpace&, const PathSpace&) = default;

 private:
  int steps_;
};

/// c_n(j): number of position changes along 0 alpha_1 ... alpha_n.
int changes_count(const PathSpace& space, PathIndex j);
/// f_n(j): number of 1s among alpha_1 ... alpha_n.
int ones_count(const PathSpace& space, PathIndex j);
/// Same endpoint alpha_n.
constexpr bool same_parity(PathIndex j, PathIndex k) { return ((j ^ k) & 1U) == 0; }

std::vector<int> changes_vector(const PathSpace& space);
std::vector<int> ones_vector(const PathSpace& space);

/// v_n(r) = #{j in Omega_n : c_n(j) = r mod 4}, r = 0..3, by the recurrence
/// v_{n+1}(r) = v_n(r) + v_n(r-1) from v_0 = (1,0,0,0).
std::array<std::uint64_t, 4> changes_residue_counts(int steps);

}  // namespace qwalk
