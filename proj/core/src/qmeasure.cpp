#include "qwalk/qmeasure.hpp"

#include "qwalk/errors.hpp"
#include "qwalk/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

namespace qwalk {

namespace {

void require_space(const DecoherenceState& state, const Event& e) {
  if (!(e.space() == state.space()))
    throw DomainError("event over Omega_" + std::to_string(e.space().steps()) + " used with mu_" +
                      std::to_string(state.steps()));
}

int changes(PathIndex j) { return std::popcount(j ^ (j >> 1)); }

// i^c(j) contributes +-1 to T_0 (even j) or +-i to T_1 (odd j); keep only the
// nonzero real coefficient.
int amplitude_sign(PathIndex j) { return (changes(j) % 4 < 2) ? 1 : -1; }

DyadicRational pair_value(int numerator, int steps) { return {BigInt(numerator), steps}; }

void require_mutually_disjoint(const Event& a, const Event& b, const Event& c) {
  if (!disjoint(a, b) || !disjoint(a, c) || !disjoint(b, c)) throw DomainError("events must be mutually disjoint");
}

}  // namespace

BigInt scaled_mu(const DecoherenceState& state, const Event& a) {
  const auto t = state.amplitude_sums(a);
  // T_0 is real and T_1 imaginary; norms add
  return t.even.norm() + t.odd.norm();
}

DyadicRational mu(const DecoherenceState& state, const Event& a, MeasureStrategy strategy) {
  require_space(state, a);
  const int n = state.steps();
  switch (strategy) {
    case MeasureStrategy::Dense: {
      const auto v = functional(state, a, a);
      return {BigInt(v.re), v.log2_denom};
    }
    case MeasureStrategy::Pairwise: {
      const std::uint64_t m = a.cardinality();
      if (m == 0) throw DomainError("pairwise strategy needs a nonempty event");
      if (m > (std::uint64_t{1} << 15))
        throw ResourceError("pairwise strategy over " + std::to_string(m) + " paths exceeds 2^15; use rank2");
      const auto members = a.members();
      // 2^n mu({i,j}) is 2, 4 or 0; 2^n mu({i}) = 1
      BigInt total = 0;
      std::int64_t acc = 0;
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) acc += 2 + 2 * state.scaled_entry(members[x], members[y]);
      total = acc;
      total -= (BigInt(m) - 2) * BigInt(m);
      return {total, n};
    }
    case MeasureStrategy::Rank2:
      return {scaled_mu(state, a), n};
  }
  throw DomainError("unknown measure strategy");
}

bool is_precluded(const DecoherenceState& state, const Event& a) {
  const auto t = state.amplitude_sums(a);
  return t.even.is_zero() && t.odd.is_zero();
}

std::string_view to_string(InterferenceClass c) {
  switch (c) {
    case InterferenceClass::NoInterference: return "none";
    case InterferenceClass::Constructive: return "constructive";
    case InterferenceClass::Destructive: return "destructive";
  }
  return "?";
}

Interference interference(const DecoherenceState& state, PathIndex i, PathIndex j) {
  const auto& space = state.space();
  space.require(i);
  space.require(j);
  if (i == j) throw DomainError("interference needs two distinct paths");
  const int n = state.steps();
  const int s = state.scaled_entry(i, j);
  Interference out;
  out.term = pair_value(2 * s, n);
  out.kind = s == 0 ? InterferenceClass::NoInterference
                    : (s > 0 ? InterferenceClass::Constructive : InterferenceClass::Destructive);
  out.pair_measure = pair_value(2 + 2 * s, n);
  return out;
}

CompositionReport interference_composition_check(const DecoherenceState& state, ChainReading reading) {
  const int n = state.steps();
  if (n > 8) throw ResourceError("composition check is exhaustive over 2^(3n) triples; needs n <= 8");
  const std::uint64_t size = state.space().size();
  std::vector<InterferenceClass> table(size * size);
  for (PathIndex i = 0; i < size; ++i)
    for (PathIndex j = 0; j < size; ++j) {
      const int s = state.scaled_entry(i, j);
      table[i * size + j] = s == 0 ? InterferenceClass::NoInterference
                                   : (s > 0 ? InterferenceClass::Constructive : InterferenceClass::Destructive);
    }
  using IC = InterferenceClass;
  CompositionReport report;
  for (PathIndex i = 0; i < size; ++i) {
    for (PathIndex j = 0; j < size; ++j) {
      if (j == i) continue;
      const IC ij = table[i * size + j];
      for (PathIndex k = 0; k < size; ++k) {
        if (k == i || k == j) continue;
        const IC jk = table[j * size + k];
        const IC ik = table[i * size + k];
        bool ok = true;
        char law = 0;
        if (ij == IC::NoInterference && jk == IC::NoInterference) {
          law = 'a';
          ok = reading == ChainReading::Interferes ? ik != IC::NoInterference : ik == IC::NoInterference;
        } else if (ij == IC::NoInterference) {
          law = 'a';
          ok = ik == IC::NoInterference;
        } else if (ij == IC::Constructive && jk == IC::Constructive) {
          law = 'b';
          ok = ik == IC::Constructive;
        } else if (ij == IC::Destructive && jk == IC::Destructive) {
          law = 'c';
          ok = ik == IC::Constructive;
        } else if (ij == IC::Constructive && jk == IC::Destructive) {
          law = 'd';
          ok = ik == IC::Destructive;
        }
        if (!ok) {
          report.holds = false;
          report.counterexample = std::array<PathIndex, 3>{i, j, k};
          report.law = law;
          return report;
        }
      }
    }
  }
  return report;
}

bool grade2_check(const DecoherenceState& state, const Event& a, const Event& b, const Event& c) {
  require_space(state, a);
  require_space(state, b);
  require_space(state, c);
  require_mutually_disjoint(a, b, c);
  const auto m = [&](const Event& e) { return scaled_mu(state, e); };
  const BigInt lhs = m(unite(unite(a, b), c));
  const BigInt rhs = m(unite(a, b)) + m(unite(a, c)) + m(unite(b, c)) - m(a) - m(b) - m(c);
  return lhs == rhs;
}

bool regularity_check(const DecoherenceState& state, const Event& a, const Event& b) {
  require_space(state, a);
  require_space(state, b);
  if (!disjoint(a, b)) throw DomainError("regularity check needs disjoint events");
  const BigInt ma = scaled_mu(state, a);
  const BigInt mb = scaled_mu(state, b);
  const BigInt mab = scaled_mu(state, unite(a, b));
  if (ma == 0 && mab != mb) return false;
  if (mab == 0 && ma != mb) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Preclusion search

namespace {

bool within_default_bounds(int n, std::optional<int> k) {
  if (n <= 4) return true;
  return k && n <= 6 && *k <= 4;
}

// All subsets of Omega_n (n <= 5) in Gray-code order, chunked over workers.
// Each step toggles one path and updates (T_0, T_1/i) in O(1).
std::vector<std::uint64_t> full_census(int n, unsigned workers) {
  const unsigned size = 1U << n;
  std::vector<int> sign(size);
  for (PathIndex j = 0; j < size; ++j) sign[j] = amplitude_sign(j);
  const std::uint64_t total = std::uint64_t{1} << size;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
  std::vector<std::vector<std::uint64_t>> found(workers);
  auto run = [&](unsigned w) {
    const std::uint64_t begin = total / workers * w;
    const std::uint64_t end = (w + 1 == workers) ? total : total / workers * (w + 1);
    std::uint64_t gray = begin ^ (begin >> 1);
    std::int64_t t0 = 0, t1 = 0;
    for (unsigned j = 0; j < size; ++j)
      if (gray >> j & 1U) (j & 1U ? t1 : t0) += sign[j];
    for (std::uint64_t idx = begin;;) {
      if (t0 == 0 && t1 == 0 && gray != 0) found[w].push_back(gray);
      if (++idx == end) break;
      const int bit = std::countr_zero(idx);
      const std::int64_t delta = (gray >> bit & 1U) ? -sign[bit] : sign[bit];
      (bit & 1 ? t1 : t0) += delta;
      gray ^= std::uint64_t{1} << bit;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  std::vector<std::uint64_t> out;
  for (auto& f : found) out.insert(out.end(), f.begin(), f.end());
  return out;
}

// Subsets of at most k paths by depth-first search over increasing members.
std::vector<std::vector<PathIndex>> bounded_search(int n, int k, unsigned workers) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<int> sign(size);
  for (PathIndex j = 0; j < size; ++j) sign[j] = amplitude_sign(j);

  std::vector<std::vector<std::vector<PathIndex>>> found(workers);
  auto dfs = [&](auto&& self, std::vector<PathIndex>& chosen, std::int64_t t0, std::int64_t t1,
                 std::vector<std::vector<PathIndex>>& out) -> void {
    if (t0 == 0 && t1 == 0) out.push_back(chosen);
    if (static_cast<int>(chosen.size()) == k) return;
    for (PathIndex j = chosen.back() + 1; j < size; ++j) {
      chosen.push_back(j);
      self(self, chosen, t0 + ((j & 1U) ? 0 : sign[j]), t1 + ((j & 1U) ? sign[j] : 0), out);
      chosen.pop_back();
    }
  };
  auto run = [&](unsigned w) {
    std::vector<PathIndex> chosen;
    for (PathIndex first = w; first < size; first += workers) {
      chosen.assign(1, first);
      dfs(dfs, chosen, (first & 1U) ? 0 : sign[first], (first & 1U) ? sign[first] : 0, found[w]);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
  std::vector<std::vector<PathIndex>> out;
  for (auto& f : found)
    for (auto& e : f) out.push_back(std::move(e));
  return out;
}

}  // namespace

double preclusion_search_cost(int steps, std::optional<int> max_cardinality) {
  const double size = std::ldexp(1.0, steps);
  if (!max_cardinality) return std::ldexp(1.0, static_cast<int>(std::min(size, 1000.0)));
  double total = 0, term = 1;
  for (int c = 1; c <= *max_cardinality && c <= size; ++c) {
    term = term * (size - c + 1) / c;
    total += term;
  }
  return total;
}

std::vector<Event> enumerate_precluded(const DecoherenceState& state, const PreclusionOptions& options) {
  const int n = state.steps();
  const auto k = options.max_cardinality;
  if (k && *k < 0) throw DomainError("max cardinality must be nonnegative");
  if (!options.force && !within_default_bounds(n, k))
    throw ResourceError("preclusion search at n=" + std::to_string(n) +
                        (k ? " with max cardinality " + std::to_string(*k) : std::string(" without a cardinality bound")) +
                        " exceeds the default bounds (n <= 4 for a full census, n <= 6 with max cardinality <= 4); "
                        "pass a smaller --max-card or --force");
  const bool full = !k || *k >= static_cast<int>(std::min<std::uint64_t>(state.space().size(), 1U << 30));
  if (full && n > 5) throw ResourceError("a full census needs n <= 5 even when forced; bound the cardinality");

  const unsigned workers = options.threads ? options.threads : worker_count();
  std::vector<std::vector<PathIndex>> sets;
  if (full) {
    for (const std::uint64_t mask : full_census(n, workers)) {
      std::vector<PathIndex> members;
      for (std::uint64_t m = mask; m; m &= m - 1) members.push_back(static_cast<PathIndex>(std::countr_zero(m)));
      sets.push_back(std::move(members));
    }
  } else if (*k > 0) {
    sets = bounded_search(n, *k, workers);
  }
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  std::vector<Event> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.emplace_back(state.space(), std::move(s));
  return out;
}

// ---------------------------------------------------------------------------

Event embed(const Event& a, const PathSpace& target, Embedding how) {
  const int m = a.space().steps();
  const int n = target.steps();
  if (m > n) throw DomainError("cannot embed Omega_" + std::to_string(m) + " into Omega_" + std::to_string(n));
  const int d = n - m;
  const PathIndex fill = d == 0 ? 0 : ((PathIndex{1} << d) - 1);
  std::vector<PathIndex> out;
  for (const PathIndex j : a.members()) {
    PathIndex lifted = j << d;
    if (how == Embedding::HoldEndpoint && (j & 1U)) lifted |= fill;
    out.push_back(lifted);
  }
  return Event(target, std::move(out));
}

bool scaling_check(const DecoherenceState& state_m, const DecoherenceState& state_n, const Event& a, Embedding how) {
  require_space(state_m, a);
  const int m = state_m.steps();
  const int n = state_n.steps();
  if (m > n) throw DomainError("scaling check needs m <= n");
  // mu_m(A) = S_m / 2^m and 2^(n-m) mu_n(B) = S_n / 2^m
  return scaled_mu(state_m, a) == scaled_mu(state_n, embed(a, state_n.space(), how));
}

}  // namespace qwalk
