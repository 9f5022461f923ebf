#pragma once

#include "qwalk/paths.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

/// Default ceiling on how many path indices an operation may materialize.
inline constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 26;

/// A subset of Omega_n.
///
/// Stored as a sorted list of path indices together with a complement flag:
/// when complemented() is true the event is Omega_n minus the stored list.
/// Both sparse events at large n (approximants with a handful of paths) and
/// co-sparse ones (Omega_n minus a point) therefore stay small.
class Event {
 public:
  /// Sorts and deduplicates; every index must lie in the space.
  Event(PathSpace space, std::vector<PathIndex> members, bool complemented = false);

  static Event empty(PathSpace space) { return Event(space, {}); }
  static Event full(PathSpace space) { return Event(space, {}, true); }
  static Event singleton(PathSpace space, PathIndex j) { return Event(space, {j}); }
  /// Bit i of mask set <=> path i in the event. Needs |Omega_n| <= 64.
  static Event from_mask(PathSpace space, std::uint64_t mask);

  const PathSpace& space() const { return space_; }
  bool complemented() const { return complemented_; }
  /// The explicit list: the members, or the excluded paths if complemented.
  std::span<const PathIndex> stored() const { return stored_; }

  bool contains(PathIndex j) const;
  std::uint64_t cardinality() const;
  bool is_empty() const { return cardinality() == 0; }

  /// Members in ascending order. Throws ResourceError above limit.
  std::vector<PathIndex> members(std::uint64_t limit = kMaterializeLimit) const;
  /// Bit mask over Omega_n; needs |Omega_n| <= 64.
  std::uint64_t mask() const;

  Event complement() const;

  friend Event unite(const Event& a, const Event& b);
  friend Event intersect(const Event& a, const Event& b);
  friend Event subtract(const Event& a, const Event& b);
  friend bool disjoint(const Event& a, const Event& b) { return intersect(a, b).is_empty(); }
  friend bool operator==(const Event& a, const Event& b);

 private:
  PathSpace space_;
  std::vector<PathIndex> stored_;
  bool complemented_ = false;
};

/// Parses "0,2,5" into indices (whitespace tolerated, empty string = empty).
std::vector<PathIndex> parse_index_list(const std::string& text);

}  // namespace qwalk
