#include "qwalk/quadratic.hpp"

#include "qwalk/errors.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace qwalk {

SetSystem::SetSystem(int universe_size, std::vector<SubsetMask> members)
    : universe_size_(universe_size), members_(std::move(members)) {
  if (universe_size < 0 || universe_size > kMaxUniverse)
    throw DomainError("universe size " + std::to_string(universe_size) + " outside [0, " +
                      std::to_string(kMaxUniverse) + "]");
  for (const SubsetMask a : members_)
    if (a & ~universe()) throw DomainError("member " + format_subset(a) + " is not a subset of the universe");
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

SubsetMask SetSystem::universe() const {
  return universe_size_ == 32 ? ~SubsetMask{0} : ((SubsetMask{1} << universe_size_) - 1);
}

std::size_t SetSystem::index_of(SubsetMask a) const {
  const auto it = std::lower_bound(members_.begin(), members_.end(), a);
  return (it != members_.end() && *it == a) ? static_cast<std::size_t>(it - members_.begin()) : npos;
}

bool SetSystem::contains(SubsetMask a) const { return index_of(a) != npos; }

namespace {

void require_size(const SetSystem& q) {
  if (q.size() > kMaxMembers)
    throw ResourceError("set system with " + std::to_string(q.size()) + " members exceeds " +
                        std::to_string(kMaxMembers));
}

// Calls visit(i, j, k) for member indices i < j < k that are mutually
// disjoint with all three pairwise unions in Q. Stops when visit returns false.
template <typename Visit>
void for_each_qualifying_triple(const SetSystem& q, Visit&& visit) {
  const auto& m = q.members();
  const std::size_t size = m.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      if ((m[i] & m[j]) || !q.contains(m[i] | m[j])) continue;
      for (std::size_t k = j + 1; k < size; ++k) {
        if ((m[k] & (m[i] | m[j])) || !q.contains(m[i] | m[k]) || !q.contains(m[j] | m[k])) continue;
        if (!visit(i, j, k)) return;
      }
    }
  }
}

}  // namespace

QuadraticReport is_quadratic_algebra(const SetSystem& q) {
  require_size(q);
  QuadraticReport report;
  report.missing_empty = !q.has_empty();
  report.missing_universe = !q.has_universe();
  const auto& m = q.members();
  for_each_qualifying_triple(q, [&](std::size_t i, std::size_t j, std::size_t k) {
    if (q.contains(m[i] | m[j] | m[k])) return true;
    report.counterexample = std::array<SubsetMask, 3>{m[i], m[j], m[k]};
    return false;
  });
  report.holds = !report.missing_empty && !report.missing_universe && !report.counterexample;
  return report;
}

QMeasureReport is_q_measure(const SetSystem& q, const QMeasureTable& nu) {
  require_size(q);
  if (nu.values.size() != q.size())
    throw DomainError("q-measure table has " + std::to_string(nu.values.size()) + " values for " +
                      std::to_string(q.size()) + " members");
  for (const auto& v : nu.values)
    if (v < 0) throw DomainError("q-measure values must be nonnegative");
  QMeasureReport report;
  report.holds = true;
  const auto& m = q.members();
  const auto& v = nu.values;
  for_each_qualifying_triple(q, [&](std::size_t i, std::size_t j, std::size_t k) {
    const std::size_t all = q.index_of(m[i] | m[j] | m[k]);
    if (all == SetSystem::npos) throw DomainError("set system is not a quadratic algebra");
    const Rational lhs = v[all];
    const Rational rhs = v[q.index_of(m[i] | m[j])] + v[q.index_of(m[i] | m[k])] + v[q.index_of(m[j] | m[k])] -
                         v[i] - v[j] - v[k];
    if (lhs == rhs) return true;
    report.holds = false;
    report.counterexample = std::array<SubsetMask, 3>{m[i], m[j], m[k]};
    report.lhs = lhs;
    report.rhs = rhs;
    return false;
  });
  return report;
}

QMeasureTable squared_cardinality(const SetSystem& q) {
  QMeasureTable t;
  for (const SubsetMask a : q.members()) {
    const int c = std::popcount(a);
    t.values.emplace_back(c * c);
  }
  return t;
}

SetSystem quadratic_closure(const SetSystem& q) {
  std::vector<SubsetMask> members = q.members();
  members.push_back(0);
  members.push_back(q.universe());
  SetSystem current(q.universe_size(), members);
  for (;;) {
    require_size(current);
    std::vector<SubsetMask> missing;
    const auto& m = current.members();
    for_each_qualifying_triple(current, [&](std::size_t i, std::size_t j, std::size_t k) {
      const SubsetMask u = m[i] | m[j] | m[k];
      if (!current.contains(u)) missing.push_back(u);
      return true;
    });
    if (missing.empty()) return current;
    members = current.members();
    members.insert(members.end(), missing.begin(), missing.end());
    current = SetSystem(q.universe_size(), members);
  }
}

SetSystem example12_system() {
  std::vector<SubsetMask> members{0, (SubsetMask{1} << 9) - 1};
  for (SubsetMask a = 1; a < (SubsetMask{1} << 9) - 1; ++a) {
    const int size = std::popcount(a);
    if (size != 3 && size != 6) continue;
    const int d = std::popcount(a & 0x7U);
    const int u = std::popcount(a & 0x38U);
    const int s = std::popcount(a & 0x1C0U);
    if (d != u && d != s && u != s) members.push_back(a);
  }
  return SetSystem(9, members);
}

QMeasureTable example12_measure(const SetSystem& q) {
  QMeasureTable t;
  for (const SubsetMask a : q.members()) {
    switch (std::popcount(a)) {
      case 0: t.values.emplace_back(0); break;
      case 3: t.values.emplace_back(1, 6); break;
      case 6: t.values.emplace_back(1, 2); break;
      case 9: t.values.emplace_back(1); break;
      default: throw DomainError("example 12 measure is defined on sets of size 0, 3, 6 and 9 only");
    }
  }
  return t;
}

std::string example12_label(int element) {
  static constexpr char kTypes[] = {'d', 'u', 's'};
  if (element < 0 || element > 8) throw DomainError("example 12 has elements 0..8");
  return std::string(1, kTypes[element / 3]) + std::to_string(element % 3 + 1);
}

SetSystem example13_system(int nx, int ny) {
  if (nx < 1 || nx % 2 == 0) throw DomainError("example 13 needs an odd number of x elements");
  if (ny < 0 || nx + ny > kMaxUniverse) throw DomainError("example 13 universe too large");
  const SubsetMask xs = (SubsetMask{1} << nx) - 1;
  std::vector<SubsetMask> members;
  for (SubsetMask a = 0; a < (SubsetMask{1} << (nx + ny)); ++a) {
    const int x = std::popcount(a & xs);
    if (x == 0 || x % 2 == 1) members.push_back(a);
  }
  if (members.size() > kMaxMembers)
    throw ResourceError("example 13 system has " + std::to_string(members.size()) + " members");
  return SetSystem(nx + ny, members);
}

SetSystem parse_set_system(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::optional<int> universe;
  std::vector<SubsetMask> members;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (!universe) {
      try {
        std::size_t used = 0;
        universe = std::stoi(line, &used);
        if (used != line.size()) throw std::invalid_argument(line);
      } catch (const std::exception&) {
        throw DomainError("line " + std::to_string(line_no) + ": expected the universe size, got '" + line + "'");
      }
      if (*universe < 0 || *universe > kMaxUniverse)
        throw DomainError("universe size must lie in [0, " + std::to_string(kMaxUniverse) + "]");
      continue;
    }
    if (line == "-" || line == "{}") {
      members.push_back(0);
      continue;
    }
    SubsetMask a = 0;
    for (const auto e : parse_index_list(line)) {
      if (e >= static_cast<std::uint64_t>(*universe))
        throw DomainError("line " + std::to_string(line_no) + ": element " + std::to_string(e) +
                          " outside the universe");
      a |= SubsetMask{1} << e;
    }
    members.push_back(a);
  }
  if (!universe) throw DomainError("set system file is empty");
  return SetSystem(*universe, members);
}

std::string format_subset(SubsetMask a) {
  std::string out = "{";
  bool first = true;
  for (int e = 0; e < 32; ++e) {
    if (!(a >> e & 1U)) continue;
    if (!first) out += ",";
    out += std::to_string(e);
    first = false;
  }
  return out + "}";
}

std::optional<int> strongly_disjoint(const SymbolicEvent& a, const SymbolicEvent& b, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be nonnegative");
  for (int n = 0; n <= n_max; ++n)
    if (disjoint(approximant(a, n).base(), approximant(b, n).base())) return n;
  return std::nullopt;
}

}  // namespace qwalk
