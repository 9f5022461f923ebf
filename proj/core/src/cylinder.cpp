#include "qwalk/cylinder.hpp"

#include "qwalk/decoherence.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/qmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace qwalk {

namespace {

void require_level(int n) {
  if (n < 0) throw DomainError("level must be nonnegative");
  if (n > kMaxSteps) throw ResourceError("level " + std::to_string(n) + " exceeds the supported maximum " +
                                         std::to_string(kMaxSteps));
}

// Paths of Omega_n with at most k ones, ascending.
std::vector<PathIndex> at_most_k_ones_paths(int n, int k) {
  double count = 0, term = 1;
  for (int c = 0; c <= std::min(n, k); ++c) {
    if (c > 0) term = term * (n - c + 1) / c;
    count += term;
  }
  if (count > static_cast<double>(kMaterializeLimit))
    throw ResourceError("approximant of at-most-" + std::to_string(k) + "-ones at n=" + std::to_string(n) + " has " +
                        decimal_string(count) + " paths");
  std::vector<PathIndex> out;
  auto rec = [&](auto&& self, PathIndex prefix, int bit, int ones) -> void {
    if (bit < 0) {
      out.push_back(prefix);
      return;
    }
    self(self, prefix, bit - 1, ones);
    if (ones < k) self(self, prefix | (PathIndex{1} << bit), bit - 1, ones + 1);
  };
  rec(rec, 0, n - 1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// sqrt of a dyadic that is a power of 2 (mu of an elementary cylinder).
RootTwoDyadic sqrt_power_of_two(const DyadicRational& v) {
  const auto r = v.reduced();
  if (r.numerator() != 1) throw DomainError("exact square root only for powers of two, got " + r.to_string());
  return RootTwoDyadic::sqrt2_power(-r.log2_denom());
}

}  // namespace

// ---------------------------------------------------------------------------

bool operator==(const CylinderEvent& a, const CylinderEvent& b) {
  const int level = std::max(a.level(), b.level());
  return refine(a, level).base() == refine(b, level).base();
}

CylinderEvent refine(const CylinderEvent& a, int to_level) {
  if (to_level < a.level())
    throw DomainError("cannot refine level " + std::to_string(a.level()) + " down to " + std::to_string(to_level));
  require_level(to_level);
  const int d = to_level - a.level();
  if (d == 0) return a;
  const auto stored = a.base().stored();
  if (stored.size() > (kMaterializeLimit >> std::min(d, 62)))
    throw ResourceError("refining " + std::to_string(stored.size()) + " paths by " + std::to_string(d) +
                        " levels exceeds the materialization limit");
  std::vector<PathIndex> out;
  out.reserve(stored.size() << d);
  const PathIndex fan = PathIndex{1} << d;
  for (const PathIndex j : stored)
    for (PathIndex r = 0; r < fan; ++r) out.push_back((j << d) | r);
  // refinement commutes with complement
  return CylinderEvent(Event(PathSpace(to_level), std::move(out), a.base().complemented()));
}

CylinderEvent project(const CylinderEvent& a, int to_level) {
  if (to_level > a.level() || to_level < 0)
    throw DomainError("projection target " + std::to_string(to_level) + " must lie in [0, " +
                      std::to_string(a.level()) + "]");
  const int d = a.level() - to_level;
  const PathSpace target(to_level);
  if (!a.base().complemented()) {
    std::vector<PathIndex> out;
    for (const PathIndex j : a.base().stored()) out.push_back(j >> d);
    return CylinderEvent(Event(target, std::move(out)));
  }
  // a prefix drops out only when every one of its 2^d extensions is excluded
  std::map<PathIndex, std::uint64_t> excluded;
  for (const PathIndex j : a.base().stored()) ++excluded[j >> d];
  std::vector<PathIndex> gone;
  for (const auto& [p, count] : excluded)
    if (count == (std::uint64_t{1} << d)) gone.push_back(p);
  return CylinderEvent(Event(target, std::move(gone), true));
}

DyadicRational mu_cyl(const CylinderEvent& a) {
  const DecoherenceState state(a.base().space());
  return mu(state, a.base(), MeasureStrategy::Rank2);
}

// ---------------------------------------------------------------------------

int EventuallyConstantPath::bit(int t) const {
  if (t < 1) throw DomainError("path bits are indexed from 1");
  return static_cast<std::size_t>(t) <= head.size() ? head[t - 1] : tail;
}

PathIndex EventuallyConstantPath::prefix(int n) const {
  require_level(n);
  PathIndex j = 0;
  for (int t = 1; t <= n; ++t) j = (j << 1) | static_cast<PathIndex>(bit(t) & 1);
  return j;
}

SymbolicEvent SymbolicEvent::finite_paths(std::vector<EventuallyConstantPath> paths) {
  for (const auto& p : paths) {
    if (p.tail != 0 && p.tail != 1) throw DomainError("path bits must be 0 or 1");
    for (int b : p.head)
      if (b != 0 && b != 1) throw DomainError("path bits must be 0 or 1");
  }
  SymbolicEvent s;
  s.kind_ = Kind::FinitePathSet;
  s.paths_ = std::move(paths);
  return s;
}

SymbolicEvent SymbolicEvent::at_most_k_ones(int k) {
  if (k < 0) throw DomainError("K must be nonnegative");
  SymbolicEvent s;
  s.kind_ = Kind::AtMostKOnes;
  s.k_ = k;
  return s;
}

SymbolicEvent SymbolicEvent::finitely_many_ones() {
  SymbolicEvent s;
  s.kind_ = Kind::FinitelyManyOnes;
  return s;
}

SymbolicEvent SymbolicEvent::cylinder(CylinderEvent c) {
  SymbolicEvent s;
  s.kind_ = Kind::Cylinder;
  s.cylinder_ = std::move(c);
  return s;
}

SymbolicEvent SymbolicEvent::complement() const {
  SymbolicEvent s = *this;
  s.complemented_ = !complemented_;
  return s;
}

std::string SymbolicEvent::describe() const {
  std::string body;
  switch (kind_) {
    case Kind::FinitePathSet: {
      body = "{";
      for (std::size_t i = 0; i < paths_.size(); ++i) {
        if (i) body += ",";
        body += "0";
        for (int b : paths_[i].head) body += static_cast<char>('0' + b);
        body += std::string(3, static_cast<char>('0' + paths_[i].tail)) + "...";
      }
      body += "}";
      break;
    }
    case Kind::AtMostKOnes: body = "at-most-" + std::to_string(k_) + "-ones"; break;
    case Kind::FinitelyManyOnes: body = "finitely-many-ones"; break;
    case Kind::Cylinder: body = "cylinder@" + std::to_string(cylinder_->level()); break;
  }
  return complemented_ ? "complement(" + body + ")" : body;
}

CylinderEvent approximant(const SymbolicEvent& s, int n) {
  require_level(n);
  const PathSpace space(n);
  using Kind = SymbolicEvent::Kind;
  if (s.kind() == Kind::Cylinder) {
    CylinderEvent c = s.complemented() ? s.cylinder_set()->complement() : *s.cylinder_set();
    return n >= c.level() ? refine(c, n) : project(c, n);
  }
  // every prefix extends outside a finite set, outside "at most K ones" (append
  // ones) and outside "finitely many ones"
  if (s.complemented()) return CylinderEvent(Event::full(space));
  switch (s.kind()) {
    case Kind::FinitePathSet: {
      std::vector<PathIndex> out;
      for (const auto& p : s.paths()) out.push_back(p.prefix(n));
      return CylinderEvent(Event(space, std::move(out)));
    }
    case Kind::AtMostKOnes:
      if (s.k() >= n) return CylinderEvent(Event::full(space));
      return CylinderEvent(Event(space, at_most_k_ones_paths(n, s.k())));
    case Kind::FinitelyManyOnes: return CylinderEvent(Event::full(space));
    case Kind::Cylinder: break;
  }
  throw DomainError("unsupported symbolic event kind");
}

CylinderEvent upper_approximant(const SymbolicEvent& s, int n) { return approximant(s.complement(), n).complement(); }

// ---------------------------------------------------------------------------

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::Diverged: return "diverged";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

LimitReport assess_limit(std::vector<LimitPoint> values, const LimitOptions& options) {
  if (options.window < 2) throw DomainError("window must be at least 2");
  if (!(options.tol > 0)) throw DomainError("tolerance must be positive");
  LimitReport report;
  report.window = options.window;
  report.tol = options.tol;
  report.values = std::move(values);
  const auto& v = report.values;
  if (v.empty()) return report;
  report.n_first = v.front().n;
  report.n_last = v.back().n;
  const std::size_t last = v.size() - 1;

  if (v[last].decimal > options.blowup && static_cast<int>(last) >= options.growth_run) {
    bool growing = true;
    for (std::size_t i = last + 1 - options.growth_run; i <= last && growing; ++i) growing = v[i].value > v[i - 1].value;
    if (growing) {
      report.verdict = Verdict::Diverged;
      return report;
    }
  }

  std::size_t start = last;
  while (start > 0 && std::fabs(v[start].decimal - v[start - 1].decimal) < options.tol) --start;
  if (last - start + 1 >= static_cast<std::size_t>(options.window)) {
    report.verdict = Verdict::Converged;
    report.estimate = v[last].decimal;
    report.at_n = v[start + options.window - 1].n;
  }
  return report;
}

LimitReport limit_mu_hat(const SymbolicEvent& s, int n_max, const LimitOptions& options) {
  if (options.window < 2 || n_max < options.window)
    throw DomainError("need n_max >= window >= 2 (n_max=" + std::to_string(n_max) +
                      ", window=" + std::to_string(options.window) + ")");
  if (n_max > kMaxSteps) throw ResourceError("n_max above " + std::to_string(kMaxSteps) + " is not supported");
  bool upper = false;
  switch (options.side) {
    case ApproximantSide::Auto: upper = s.complemented(); break;
    case ApproximantSide::Lower: upper = false; break;
    case ApproximantSide::Upper: upper = true; break;
  }
  std::vector<LimitPoint> points;
  for (int n = 1; n <= n_max; ++n) {
    const auto c = upper ? upper_approximant(s, n) : approximant(s, n);
    auto value = mu_cyl(c);
    const double d = value.to_double();
    points.push_back({n, std::move(value), d});
  }
  return assess_limit(std::move(points), options);
}

// ---------------------------------------------------------------------------

Event example8_base(int i) {
  if (i < 1) throw DomainError("example 8 index starts at 1");
  if (3 * i > kMaxSteps || std::pow(3.0, i) > static_cast<double>(kMaterializeLimit))
    throw ResourceError("A_" + std::to_string(i) + " has 3^" + std::to_string(i) + " base paths; too many to list");
  static constexpr std::array<PathIndex, 3> kBlock{2, 4, 6};  // 010, 100, 110
  std::vector<PathIndex> paths{0};
  for (int b = 0; b < i; ++b) {
    std::vector<PathIndex> next;
    next.reserve(paths.size() * 3);
    for (const PathIndex p : paths)
      for (const PathIndex x : kBlock) next.push_back((p << 3) | x);
    paths = std::move(next);
  }
  return Event(PathSpace(3 * i), std::move(paths));
}

std::vector<Example8Term> example8_sequence(int i_max) {
  if (i_max < 1) throw DomainError("i_max must be at least 1");
  std::vector<Example8Term> out;
  BigInt power = 1;
  for (int i = 1; i <= i_max; ++i) {
    power *= 9;
    const DyadicRational product(power, 3 * i);
    if (i <= kExample8DirectMax) {
      const auto direct = mu_cyl(CylinderEvent(example8_base(i)));
      if (!(direct == product))
        throw std::logic_error("direct mu(A_" + std::to_string(i) + ") = " + direct.to_string() +
                               " breaks the (9/8)^i pattern");
      out.push_back({i, direct, true});
    } else {
      out.push_back({i, product, false});
    }
  }
  return out;
}

LimitReport example8_limit(int i_max, const LimitOptions& options) {
  std::vector<LimitPoint> points;
  for (auto& t : example8_sequence(i_max)) {
    const double d = t.value.to_double();
    points.push_back({t.i, std::move(t.value), d});
  }
  return assess_limit(std::move(points), options);
}

DyadicRational variation_lower_bound(int n) {
  if (n < 1) throw DomainError("variation bound needs n >= 1");
  require_level(n);
  const PathSpace space(n);
  RootTwoDyadic total;
  if (n <= 16) {
    for (PathIndex j = 0; j < space.size(); ++j)
      total = total + sqrt_power_of_two(mu_cyl(CylinderEvent(Event::singleton(space, j))));
  } else {
    // every elementary cylinder has measure 2^-n
    const auto cell = sqrt_power_of_two(mu_cyl(CylinderEvent(Event::singleton(space, 0))));
    total = RootTwoDyadic(BigInt(1) << n, 0, 0) * cell;
  }
  return (total * total).to_dyadic();
}

std::array<std::uint64_t, 4> v_counts(int n) {
  if (n < 1) throw DomainError("v counts need n >= 1");
  return changes_residue_counts(n);
}

std::array<RootTwoDyadic, 4> v_counts_closed_form(int n) {
  if (n < 1) throw DomainError("v counts need n >= 1");
  std::array<RootTwoDyadic, 4> out;
  const auto base = RootTwoDyadic::sqrt2_power(2 * (n - 2));
  const auto amplitude = RootTwoDyadic::sqrt2_power(n - 2);
  for (int j = 0; j < 4; ++j) out[j] = base + amplitude * RootTwoDyadic::cos_quarter_pi(n - 2 * j);
  return out;
}

RootTwoDyadic leaves_origin_closed_form(int n) {
  if (n < 1) throw DomainError("closed form needs n >= 1");
  const RootTwoDyadic one(1, 0, 0);
  const RootTwoDyadic tiny(1, 0, n);
  return one + tiny - RootTwoDyadic::cos_quarter_pi(n) * RootTwoDyadic::sqrt2_power(2 - n);
}

DyadicRational at_most_one_closed_form(int n) {
  if (n < 1) throw DomainError("closed form needs n >= 1");
  const std::int64_t num = static_cast<std::int64_t>(n) * n - 4 * static_cast<std::int64_t>(n) + 5;
  return {BigInt(num), n};
}

}  // namespace qwalk
