#pragma once

// Finite set systems: the quadratic-algebra axiom, the q-measure (grade-2
// additivity) axiom, and strong disjointness of symbolic events.

#include "qwalk/cylinder.hpp"
#include "qwalk/exact.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qwalk {

using SubsetMask = std::uint32_t;

inline constexpr int kMaxUniverse = 24;
inline constexpr std::size_t kMaxMembers = 4096;

/// A collection of subsets of {0, ..., universe_size - 1}, deduplicated and
/// kept in ascending mask order.
class SetSystem {
 public:
  SetSystem(int universe_size, std::vector<SubsetMask> members);

  int universe_size() const { return universe_size_; }
  SubsetMask universe() const;
  const std::vector<SubsetMask>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains(SubsetMask a) const;
  /// Position of a in members(), or npos.
  std::size_t index_of(SubsetMask a) const;
  bool has_empty() const { return contains(0); }
  bool has_universe() const { return contains(universe()); }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  int universe_size_;
  std::vector<SubsetMask> members_;
};

struct QuadraticReport {
  bool holds = false;
  bool missing_empty = false;
  bool missing_universe = false;
  /// First disjoint triple (in member order, i < j < k) whose pairwise unions
  /// lie in Q but whose union does not.
  std::optional<std::array<SubsetMask, 3>> counterexample;
  explicit operator bool() const { return holds; }
};

QuadraticReport is_quadratic_algebra(const SetSystem& q);

/// Values aligned with q.members().
struct QMeasureTable {
  std::vector<Rational> values;
};

struct QMeasureReport {
  bool holds = false;
  std::optional<std::array<SubsetMask, 3>> counterexample;
  Rational lhs;
  Rational rhs;
  explicit operator bool() const { return holds; }
};

/// Grade-2 additivity over every qualifying disjoint triple. Throws
/// DomainError when the table does not match q or a value is negative.
QMeasureReport is_q_measure(const SetSystem& q, const QMeasureTable& nu);

/// nu(A) = |A|^2.
QMeasureTable squared_cardinality(const SetSystem& q);

/// Adds the empty set, the universe and every missing triple union until the
/// quadratic condition holds.
SetSystem quadratic_closure(const SetSystem& q);

/// Nine elements d1 d2 d3 u1 u2 u3 s1 s2 s3 (bits 0..8); the sets of size 3
/// or 6 whose three types appear with distinct multiplicities, plus the empty
/// set and the universe.
SetSystem example12_system();
/// 0 on the empty set, 1/6 on size 3, 1/2 on size 6, 1 on the universe.
QMeasureTable example12_measure(const SetSystem& q);
/// Element label for example 12 ("d1" .. "s3").
std::string example12_label(int element);

/// x_1..x_nx (bits 0..nx-1) and y_1..y_ny; members are the sets with zero or
/// an odd number of x's. nx must be odd.
SetSystem example13_system(int nx, int ny);

/// First line: universe size. Each further line: comma separated elements of
/// one member; "-" or "{}" denotes the empty set; '#' starts a comment.
SetSystem parse_set_system(const std::string& text);
std::string format_subset(SubsetMask a);

/// Least n in [0, n_max] with disjoint approximants A^(n), B^(n), if any.
std::optional<int> strongly_disjoint(const SymbolicEvent& a, const SymbolicEvent& b, int n_max);

}  // namespace qwalk
