#include "qwalk/event.hpp"

#include "qwalk/errors.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <sstream>

namespace qwalk {

namespace {

using List = std::vector<PathIndex>;

List set_union(const List& a, const List& b) {
  List out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

List set_intersection(const List& a, const List& b) {
  List out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

List set_difference(const List& a, const List& b) {
  List out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void require_same_space(const Event& a, const Event& b) {
  if (!(a.space() == b.space())) throw DomainError("events live on different path spaces");
}

}  // namespace

Event::Event(PathSpace space, std::vector<PathIndex> members, bool complemented)
    : space_(space), stored_(std::move(members)), complemented_(complemented) {
  std::sort(stored_.begin(), stored_.end());
  stored_.erase(std::unique(stored_.begin(), stored_.end()), stored_.end());
  if (!stored_.empty()) space_.require(stored_.back());
}

Event Event::from_mask(PathSpace space, std::uint64_t mask) {
  if (space.steps() > 6) throw DomainError("bit-mask events need n <= 6");
  if (space.size() < 64 && (mask >> space.size()) != 0) throw DomainError("mask has bits outside Omega_n");
  std::vector<PathIndex> members;
  members.reserve(static_cast<std::size_t>(std::popcount(mask)));
  for (; mask != 0; mask &= mask - 1) members.push_back(static_cast<PathIndex>(std::countr_zero(mask)));
  return Event(space, std::move(members));
}

bool Event::contains(PathIndex j) const {
  if (!space_.contains(j)) return false;
  return std::binary_search(stored_.begin(), stored_.end(), j) != complemented_;
}

std::uint64_t Event::cardinality() const {
  return complemented_ ? space_.size() - stored_.size() : stored_.size();
}

std::vector<PathIndex> Event::members(std::uint64_t limit) const {
  if (!complemented_) {
    if (stored_.size() > limit) throw ResourceError("event has more than " + std::to_string(limit) + " members");
    return stored_;
  }
  const std::uint64_t count = cardinality();
  if (count > limit)
    throw ResourceError("materializing " + std::to_string(count) + " paths exceeds the limit of " +
                        std::to_string(limit));
  std::vector<PathIndex> out;
  out.reserve(count);
  auto skip = stored_.begin();
  for (PathIndex j = 0; j < space_.size(); ++j) {
    if (skip != stored_.end() && *skip == j) {
      ++skip;
      continue;
    }
    out.push_back(j);
  }
  return out;
}

std::uint64_t Event::mask() const {
  if (space_.steps() > 6) throw DomainError("bit-mask view needs n <= 6");
  std::uint64_t m = 0;
  for (PathIndex j : stored_) m |= std::uint64_t{1} << j;
  if (complemented_) {
    const std::uint64_t all = space_.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << space_.size()) - 1;
    m = all & ~m;
  }
  return m;
}

Event Event::complement() const { return Event(space_, stored_, !complemented_); }

Event unite(const Event& a, const Event& b) {
  require_same_space(a, b);
  const auto& x = a.stored_;
  const auto& y = b.stored_;
  if (!a.complemented_ && !b.complemented_) return Event(a.space_, set_union(x, y));
  if (a.complemented_ && b.complemented_) return Event(a.space_, set_intersection(x, y), true);
  if (a.complemented_) return Event(a.space_, set_difference(x, y), true);
  return Event(a.space_, set_difference(y, x), true);
}

Event intersect(const Event& a, const Event& b) {
  require_same_space(a, b);
  const auto& x = a.stored_;
  const auto& y = b.stored_;
  if (!a.complemented_ && !b.complemented_) return Event(a.space_, set_intersection(x, y));
  if (a.complemented_ && b.complemented_) return Event(a.space_, set_union(x, y), true);
  if (a.complemented_) return Event(a.space_, set_difference(y, x));
  return Event(a.space_, set_difference(x, y));
}

Event subtract(const Event& a, const Event& b) { return intersect(a, b.complement()); }

bool operator==(const Event& a, const Event& b) {
  if (!(a.space_ == b.space_)) return false;
  if (a.complemented_ == b.complemented_) return a.stored_ == b.stored_;
  // explicit list G against Omega_n \ F: equal iff G and F partition Omega_n
  const auto& g = a.complemented_ ? b.stored_ : a.stored_;
  const auto& f = a.complemented_ ? a.stored_ : b.stored_;
  if (g.size() + f.size() != a.space_.size()) return false;
  return set_intersection(g, f).empty();
}

std::vector<PathIndex> parse_index_list(const std::string& text) {
  std::vector<PathIndex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    const auto last = item.find_last_not_of(" \t");
    const std::string token = item.substr(first, last - first + 1);
    if (token.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("not a path index: '" + token + "'");
    try {
      out.push_back(std::stoull(token));
    } catch (const std::exception&) {
      throw DomainError("path index out of range: '" + token + "'");
    }
  }
  return out;
}

}  // namespace qwalk
