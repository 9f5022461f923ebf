#include "qwalk/verify.hpp"

#include "qwalk/cylinder.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/paths.hpp"
#include "qwalk/qintegral.hpp"
#include "qwalk/qmeasure.hpp"
#include "qwalk/quadratic.hpp"

#include <chrono>
#include <exception>
#include <functional>
#include <random>
#include <set>

namespace qwalk {

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Event ev(int n, std::vector<PathIndex> members) { return Event(PathSpace(n), std::move(members)); }
DyadicRational dy(long num, int log2_den) { return {BigInt(num), log2_den}; }

Event random_event(std::mt19937_64& rng, int n) {
  const PathSpace space(n);
  if (n <= 6) return Event::from_mask(space, space.size() == 64 ? rng() : rng() & ((std::uint64_t{1} << space.size()) - 1));
  std::vector<PathIndex> members;
  if (n <= 8) {
    for (PathIndex j = 0; j < space.size(); ++j)
      if (rng() & 1U) members.push_back(j);
    return Event(space, std::move(members));
  }
  const int card = 1 + static_cast<int>(rng() % 64);
  for (int c = 0; c < card; ++c) members.push_back(rng() % space.size());
  return Event(space, std::move(members));
}

// Splits a random subset of Omega_n into three disjoint parts.
std::array<Event, 3> random_disjoint_triple(std::mt19937_64& rng, int n) {
  std::array<std::vector<PathIndex>, 3> parts;
  const PathSpace space(n);
  for (PathIndex j = 0; j < space.size(); ++j) {
    const auto r = rng() % 4;
    if (r < 3) parts[r].push_back(j);
  }
  return {Event(space, parts[0]), Event(space, parts[1]), Event(space, parts[2])};
}

RandomVariable random_variable(std::mt19937_64& rng, int n, bool nonnegative) {
  const PathSpace space(n);
  std::vector<Rational> v;
  for (PathIndex j = 0; j < space.size(); ++j) {
    const long num = static_cast<long>(rng() % 21) - (nonnegative ? 0 : 10);
    const long den = 1 + static_cast<long>(rng() % 6);
    v.emplace_back(num, den);
  }
  return {space, std::move(v)};
}

// ---------------------------------------------------------------------------

Outcome single_step() {
  Outcome o;
  const DecoherenceState s(1);
  o.expect(s.entry(0, 0) == GaussianScaled{1, 0, 1} && s.entry(1, 1) == GaussianScaled{1, 0, 1} &&
               s.entry(0, 1) == GaussianScaled{} && s.entry(1, 0) == GaussianScaled{},
           "D^1 is not I/2");
  o.expect(mu(s, Event::empty(s.space())) == dy(0, 0), "mu_1(empty) != 0");
  o.expect(mu(s, ev(1, {0})) == dy(1, 1) && mu(s, ev(1, {1})) == dy(1, 1), "mu_1 of a point != 1/2");
  o.expect(mu(s, Event::full(s.space())) == dy(1, 0), "mu_1(Omega_1) != 1");
  o.expect(interference(s, 0, 1).kind == InterferenceClass::NoInterference, "paths of Omega_1 interfere");
  return o;
}

Outcome two_step_table() {
  Outcome o;
  const DecoherenceState s(2);
  const int expected[4][4] = {{1, 0, -1, 0}, {0, 1, 0, 1}, {-1, 0, 1, 0}, {0, 1, 0, 1}};
  for (PathIndex j = 0; j < 4; ++j)
    for (PathIndex k = 0; k < 4; ++k)
      o.expect(s.entry(j, k) == GaussianScaled{expected[j][k], 0, 2}, "D^2 entry mismatch");
  struct Row {
    std::vector<PathIndex> a;
    long num;
    int log2;
  };
  const std::vector<Row> table = {{{0, 2}, 0, 0},    {{0, 1}, 1, 1},    {{0, 3}, 1, 1},    {{1, 2}, 1, 1},
                                  {{2, 3}, 1, 1},    {{1, 3}, 1, 0},    {{0, 1, 2}, 1, 2}, {{0, 1, 3}, 5, 2},
                                  {{1, 2, 3}, 5, 2}, {{0, 1, 2, 3}, 1, 0}, {{0}, 1, 2},    {{3}, 1, 2}};
  for (const auto& r : table)
    for (auto strategy : {MeasureStrategy::Dense, MeasureStrategy::Pairwise, MeasureStrategy::Rank2})
      o.expect(mu(s, ev(2, r.a), strategy) == dy(r.num, r.log2), "mu_2 table mismatch");
  for (PathIndex i = 0; i < 4; ++i)
    for (PathIndex j = i + 1; j < 4; ++j) {
      const auto term = interference(s, i, j).term;
      const long want = (i == 0 && j == 2) ? -1 : (i == 1 && j == 3) ? 1 : 0;
      o.expect(term == dy(want, 1), "I^2_" + std::to_string(i) + std::to_string(j) + " mismatch");
    }
  return o;
}

Outcome three_step_pattern() {
  Outcome o;
  const int pattern[8][8] = {
      {1, 0, -1, 0, -1, 0, -1, 0}, {0, 1, 0, 1, 0, -1, 0, 1},   {-1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, -1, 0, 1},
      {-1, 0, 1, 0, 1, 0, 1, 0},   {0, -1, 0, -1, 0, 1, 0, -1}, {-1, 0, 1, 0, 1, 0, 1, 0}, {0, 1, 0, 1, 0, -1, 0, 1}};
  const DecoherenceState s(3);
  for (PathIndex j = 0; j < 8; ++j)
    for (PathIndex k = 0; k < 8; ++k)
      o.expect(s.entry(j, k) == GaussianScaled{pattern[j][k], 0, 3},
               "D^3 entry (" + std::to_string(j) + "," + std::to_string(k) + ") mismatch");
  o.expect(changes_vector(PathSpace(3)) == std::vector<int>{0, 1, 2, 1, 2, 3, 2, 1}, "c_3 mismatch");
  return o;
}

Outcome composition_instances() {
  Outcome o;
  const DecoherenceState s(3);
  auto cls = [&](PathIndex i, PathIndex j) { return interference(s, i, j).kind; };
  using IC = InterferenceClass;
  o.expect(cls(0, 2) == IC::Destructive && cls(2, 4) == IC::Constructive && cls(0, 4) == IC::Destructive,
           "0d2, 2c4, 0d4 fails");
  o.expect(cls(2, 0) == IC::Destructive && cls(0, 4) == IC::Destructive && cls(2, 4) == IC::Constructive,
           "2d0, 0d4, 2c4 fails");
  o.expect(cls(1, 3) == IC::Constructive && cls(3, 7) == IC::Constructive && cls(1, 7) == IC::Constructive,
           "1c3, 3c7, 1c7 fails");
  return o;
}

Outcome composition_laws() {
  Outcome o;
  for (int n = 1; n <= 8; ++n) {
    const DecoherenceState s(n);
    const auto r = interference_composition_check(s);
    o.expect(r.holds, "composition law (" + std::string(1, r.law) + ") fails at n=" + std::to_string(n));
  }
  const auto wrong = interference_composition_check(DecoherenceState(2), ChainReading::DoesNotInterfere);
  o.expect(!wrong.holds, "the non-interfering reading of the first chain law was not falsified");
  return o;
}

Outcome three_step_census() {
  Outcome o;
  const DecoherenceState s(3);
  const auto found = enumerate_precluded(s);
  std::set<std::vector<PathIndex>> doubles, quads;
  for (const auto& e : found) {
    const auto m = e.members();
    if (m.size() == 2) doubles.insert(m);
    else if (m.size() == 4) quads.insert(m);
    else o.expect(false, "precluded event of cardinality " + std::to_string(m.size()));
  }
  const std::set<std::vector<PathIndex>> want2 = {{0, 2}, {0, 4}, {0, 6}, {1, 5}, {3, 5}, {5, 7}};
  const std::set<std::vector<PathIndex>> want4 = {{0, 1, 2, 5}, {0, 2, 3, 5}, {0, 2, 5, 7}, {0, 1, 4, 5}, {0, 3, 4, 5},
                                                  {0, 4, 5, 7}, {0, 1, 5, 6}, {0, 3, 5, 6}, {0, 5, 6, 7}};
  o.expect(doubles == want2, "precluded doubletons differ");
  o.expect(quads == want4, "precluded quadruples differ");
  // tripleton values
  o.expect(mu(s, ev(3, {0, 1, 2})) == dy(1, 3), "inj,ink,jdk tripleton != 1/8");
  o.expect(mu(s, ev(3, {0, 1, 3})) == dy(5, 3), "inj,ink,jck tripleton != 5/8");
  o.expect(mu(s, ev(3, {2, 4, 6})) == dy(9, 3), "mu_3({2,4,6}) != 9/8");
  return o;
}

Outcome four_step_precluded() {
  Outcome o;
  const DecoherenceState s(4);
  for (const auto& a : std::vector<std::vector<PathIndex>>{{0, 2}, {0, 4}, {2, 10}, {4, 10}, {0, 2, 4, 10}})
    o.expect(is_precluded(s, ev(4, a)), "expected a precluded event at n=4");
  o.expect(mu(s, ev(4, {0, 10})) == dy(1, 2) && mu(s, ev(4, {2, 4})) == dy(1, 2), "mu_4({0,10}), mu_4({2,4}) != 1/4");
  const auto census = enumerate_precluded(s);
  o.expect(std::find(census.begin(), census.end(), ev(4, {0, 2, 4, 10})) != census.end(),
           "{0,2,4,10} missing from the n=4 census");
  return o;
}

Outcome refined_preclusion() {
  Outcome o;
  const CylinderEvent base(ev(2, {0, 2}));
  const auto l3 = refine(base, 3);
  const auto l4 = refine(l3, 4);
  o.expect(l3.base() == ev(3, {0, 1, 4, 5}), "refinement to level 3 differs");
  o.expect(l4.base() == ev(4, {0, 8, 2, 10, 1, 9, 3, 11}), "refinement to level 4 differs");
  o.expect(mu_cyl(base).is_zero() && mu_cyl(l3).is_zero() && mu_cyl(l4).is_zero(), "refinement is not precluded");
  return o;
}

Outcome nested_cylinders() {
  Outcome o;
  const auto seq = example8_sequence(3);
  BigInt p = 1;
  for (const auto& t : seq) {
    p *= 9;
    o.expect(t.direct && t.value == DyadicRational(p, 3 * t.i), "mu(A_" + std::to_string(t.i) + ") != (9/8)^i");
  }
  for (int i = 1; i < 3; ++i)
    o.expect(subtract(refine(CylinderEvent(example8_base(i + 1)), 3 * i + 3).base(),
                      refine(CylinderEvent(example8_base(i)), 3 * i + 3).base())
                 .is_empty(),
             "A_i is not decreasing");
  o.expect(example8_limit(130).verdict == Verdict::Diverged, "growth not flagged as divergent");
  return o;
}

Outcome variation() {
  Outcome o;
  for (int n = 1; n <= 30; ++n)
    o.expect(variation_lower_bound(n) == DyadicRational(BigInt(1) << n, 0), "bound != 2^n at n=" + std::to_string(n));
  return o;
}

Outcome finite_complement_approximant() {
  Outcome o;
  const auto a = SymbolicEvent::finite_paths({{{}, 0}, {{1, 0}, 1}});
  for (int n = 0; n <= 12; ++n)
    o.expect(approximant(a.complement(), n).base() == Event::full(PathSpace(n)),
             "approximant of a cofinite set is not Omega at n=" + std::to_string(n));
  return o;
}

Outcome at_most_one_one() {
  Outcome o;
  const auto a = SymbolicEvent::at_most_k_ones(1);
  for (int n = 1; n <= 20; ++n) {
    const auto c = approximant(a, n);
    std::vector<PathIndex> want{0};
    for (int b = 0; b < n; ++b) want.push_back(PathIndex{1} << b);
    o.expect(c.base() == Event(PathSpace(n), want), "approximant mismatch at n=" + std::to_string(n));
    o.expect(mu_cyl(c) == at_most_one_closed_form(n), "mu(A^(n)) != (n^2-4n+5)/2^n at n=" + std::to_string(n));
  }
  LimitOptions opt;
  opt.tol = 1e-6;
  const auto r = limit_mu_hat(a, 40, opt);
  o.expect(r.verdict == Verdict::Converged && std::abs(r.estimate) < 1e-6, "limit is not 0");
  o.expect(r.values[29].decimal < 1e-6, "mu(A^(30)) >= 1e-6");
  return o;
}

Outcome leaves_origin() {
  Outcome o;
  const auto b = SymbolicEvent::finite_paths({{{}, 0}}).complement();
  for (int n = 1; n <= 24; ++n) {
    const auto direct = mu(DecoherenceState(n), Event(PathSpace(n), {0}, true));
    const auto closed = leaves_origin_closed_form(n);
    o.expect(closed.is_rational() && closed.to_dyadic() == direct, "closed form mismatch at n=" + std::to_string(n));
    o.expect(mu_cyl(upper_approximant(b, n)) == direct, "upper approximant mismatch at n=" + std::to_string(n));
  }
  LimitOptions opt;
  opt.tol = 1e-6;
  const auto r = limit_mu_hat(b, 48, opt);
  o.expect(r.verdict == Verdict::Converged && std::abs(r.estimate - 1.0) < 1e-5, "limit is not 1");
  const auto ret = SymbolicEvent::finite_paths({{{}, 1}}).complement();
  const auto rr = limit_mu_hat(ret, 48, opt);
  o.expect(rr.verdict == Verdict::Converged && std::abs(rr.estimate - 1.0) < 1e-5, "return probability is not 1");
  return o;
}

Outcome v_count_forms() {
  Outcome o;
  for (int n = 1; n <= 40; ++n) {
    const auto v = v_counts(n);
    const auto c = v_counts_closed_form(n);
    std::uint64_t total = 0;
    for (int j = 0; j < 4; ++j) {
      o.expect(c[j].is_rational() && c[j].to_dyadic() == DyadicRational(BigInt(v[j]), 0),
               "v_n closed form mismatch at n=" + std::to_string(n));
      total += v[j];
    }
    o.expect(total == (std::uint64_t{1} << n), "v_n does not sum to 2^n");
    if (n <= 16) {
      std::array<std::uint64_t, 4> direct{};
      for (const int x : changes_vector(PathSpace(n))) ++direct[x % 4];
      o.expect(direct == v, "v_n recurrence differs from direct count at n=" + std::to_string(n));
    }
  }
  return o;
}

Outcome quadratic_nine() {
  Outcome o;
  const auto q = example12_system();
  o.expect(is_quadratic_algebra(q).holds, "nine-element system is not a quadratic algebra");
  const auto nu = example12_measure(q);
  o.expect(is_q_measure(q, nu).holds, "nu is not a q-measure");
  // {u1,d1,d2} and {u2,u3,s1}; d = bits 0..2, u = 3..5, s = 6..8
  const SubsetMask a = 0b000001011, b = 0b001110000;
  const Rational sum = nu.values[q.index_of(a)] + nu.values[q.index_of(b)];
  o.expect(sum == Rational(1, 3) && nu.values[q.index_of(a | b)] == Rational(1, 2), "nu additivity gap != 1/3 vs 1/2");
  std::vector<SubsetMask> without(q.members());
  without.erase(std::find(without.begin(), without.end(), q.universe()));
  const auto r = is_quadratic_algebra(SetSystem(9, without));
  o.expect(!r.holds && r.counterexample.has_value(), "removing the universe did not produce a counterexample");
  return o;
}

Outcome quadratic_odd() {
  Outcome o;
  for (int nx : {1, 3, 5})
    for (int ny : {0, 2, 3}) {
      const auto q = example13_system(nx, ny);
      o.expect(is_quadratic_algebra(q).holds, "odd-x system is not a quadratic algebra");
      o.expect(is_q_measure(q, squared_cardinality(q)).holds, "|A|^2 is not a q-measure");
    }
  return o;
}

Outcome recurrences() {
  Outcome o;
  o.expect(changes_vector(PathSpace(2)) == std::vector<int>{0, 1, 2, 1}, "c_2 mismatch");
  o.expect(changes_vector(PathSpace(4)) == std::vector<int>{0, 1, 2, 1, 2, 3, 2, 1, 2, 3, 4, 3, 2, 3, 2, 1},
           "c_4 mismatch");
  o.expect(ones_vector(PathSpace(3)) == std::vector<int>{0, 1, 1, 2, 1, 2, 2, 3}, "f_3 mismatch");
  o.expect(ones_vector(PathSpace(4)) == std::vector<int>{0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4},
           "f_4 mismatch");
  for (int n = 1; n <= 12; ++n) {
    const PathSpace s(n), t(n + 1);
    for (PathIndex j = 0; j < s.size(); ++j) {
      o.expect(changes_count(t, t.size() - 1 - j) == changes_count(s, j) + 1, "reflection recurrence fails");
      o.expect(ones_count(t, j + s.size()) == ones_count(s, j) + 1, "shift recurrence fails");
    }
  }
  for (int n = 1; n <= 10; ++n) {
    const PathSpace s(n);
    for (PathIndex j = 0; j < s.size(); ++j)
      for (PathIndex k = 0; k < s.size(); ++k)
        o.expect(same_parity(j, k) == ((changes_count(s, j) - changes_count(s, k)) % 2 == 0), "parity link fails");
  }
  return o;
}

Outcome not_strongly_disjoint() {
  Outcome o;
  const auto a = SymbolicEvent::finitely_many_ones();
  o.expect(!strongly_disjoint(a, a.complement(), 40).has_value(), "finitely-many-ones is strongly disjoint from its complement");
  const auto zero = SymbolicEvent::finite_paths({{{}, 0}});
  const auto one = SymbolicEvent::finite_paths({{{}, 1}});
  o.expect(strongly_disjoint(zero, one, 10) == 1, "000... and 0111... not separated at n=1");
  return o;
}

Outcome integral_table() {
  Outcome o;
  const Rational f_want[] = {Rational(1, 2), Rational(3, 2), Rational(2)};
  const Rational c_want[] = {Rational(1, 2), Rational(3, 2), Rational(3)};
  for (int n = 1; n <= 3; ++n) {
    const DecoherenceState s(n);
    for (auto strategy : {IntegralStrategy::Definition, IntegralStrategy::Trace, IntegralStrategy::Eigen}) {
      o.expect(integral(s, RandomVariable::ones(s.space()), strategy) == f_want[n - 1],
               "int f_" + std::to_string(n) + " mismatch");
      o.expect(integral(s, RandomVariable::changes(s.space()), strategy) == c_want[n - 1],
               "int c_" + std::to_string(n) + " mismatch");
    }
  }
  return o;
}

// ---------------------------------------------------------------------------
// randomized and exhaustive property suites

Outcome decoherence_structure() {
  Outcome o;
  for (int n = 1; n <= 10; ++n) {
    const DecoherenceState s(n);
    for (PathIndex j = 0; j < s.space().size(); ++j) {
      o.expect(s.entry(j, j) == GaussianScaled{1, 0, n}, "diagonal entry != 1/2^n");
      for (PathIndex k = 0; k < s.space().size(); ++k) {
        const auto e = s.entry(j, k), t = s.entry(k, j);
        o.expect(e.re == t.re && e.im == -t.im, "D^n is not Hermitian");
      }
    }
    o.expect(verify_eigen_equation(s), "eigen-equation fails at n=" + std::to_string(n));
    o.expect(verify_rank_two_reconstruction(s), "rank-2 reconstruction fails at n=" + std::to_string(n));
    const auto full = Event::full(s.space());
    o.expect(functional(s, full, full) == GaussianScaled{1, 0, 0}, "D_n(Omega, Omega) != 1");
  }
  for (int n = 1; n <= 20; ++n) {
    const DecoherenceState s(n);
    o.expect(mu(s, Event::full(s.space())) == dy(1, 0), "mu_n(Omega_n) != 1 at n=" + std::to_string(n));
  }
  return o;
}

Outcome strategy_agreement() {
  Outcome o;
  for (int n = 1; n <= 4; ++n) {
    const DecoherenceState s(n);
    const std::uint64_t subsets = std::uint64_t{1} << s.space().size();
    for (std::uint64_t m = 1; m < subsets; ++m) {
      const auto e = Event::from_mask(s.space(), m);
      const auto r = mu(s, e, MeasureStrategy::Rank2);
      o.expect(r == mu(s, e, MeasureStrategy::Dense) && r == mu(s, e, MeasureStrategy::Pairwise),
               "strategies disagree at n=" + std::to_string(n));
      o.expect(r.sign() >= 0, "negative measure");
      if (e.cardinality() % 2 == 1) o.expect(!r.is_zero(), "odd-cardinality event is precluded");
    }
  }
  std::mt19937_64 rng(20240601);
  for (int n = 5; n <= 16; ++n) {
    const DecoherenceState s(n);
    for (int t = 0; t < 10000 && o.ok; ++t) {
      const auto e = random_event(rng, n);
      if (e.is_empty()) continue;
      const auto r = mu(s, e, MeasureStrategy::Rank2);
      o.expect(r == mu(s, e, MeasureStrategy::Dense) && r == mu(s, e, MeasureStrategy::Pairwise),
               "strategies disagree at n=" + std::to_string(n));
      o.expect(r.sign() >= 0, "negative measure");
    }
  }
  return o;
}

Outcome pair_trichotomy() {
  Outcome o;
  for (int n = 2; n <= 12; ++n) {
    const DecoherenceState s(n);
    const std::uint64_t size = s.space().size();
    const DyadicRational none(1, n - 1), cons(1, n - 2), zero;
    for (PathIndex i = 0; i < size && o.ok; ++i)
      for (PathIndex j = i + 1; j < size; ++j) {
        const auto in = interference(s, i, j);
        const auto& p = in.pair_measure;
        o.expect(p == none || p == cons || p == zero, "pair measure outside the trichotomy");
        o.expect(same_parity(i, j) == (in.kind != InterferenceClass::NoInterference), "interference ignores parity");
      }
  }
  return o;
}

Outcome grade2_and_regularity() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const DecoherenceState s(n);
    const std::uint64_t size = s.space().size();
    std::uint64_t codes = 1;
    for (std::uint64_t j = 0; j < size; ++j) codes *= 4;
    for (std::uint64_t code = 0; code < codes; ++code) {
      std::array<std::vector<PathIndex>, 3> parts;
      std::uint64_t c = code;
      for (PathIndex j = 0; j < size; ++j, c /= 4)
        if (c % 4 < 3) parts[c % 4].push_back(j);
      const Event a(s.space(), parts[0]), b(s.space(), parts[1]), cc(s.space(), parts[2]);
      o.expect(grade2_check(s, a, b, cc), "grade-2 additivity fails at n=" + std::to_string(n));
      o.expect(regularity_check(s, a, b), "regularity fails at n=" + std::to_string(n));
    }
  }
  std::mt19937_64 rng(7);
  for (int n = 4; n <= 8; ++n) {
    const DecoherenceState s(n);
    for (int t = 0; t < 1000; ++t) {
      const auto [a, b, c] = random_disjoint_triple(rng, n);
      o.expect(grade2_check(s, a, b, c) && regularity_check(s, a, b), "random grade-2/regularity fails");
    }
  }
  return o;
}

Outcome vector_measure_suite() {
  Outcome o;
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 10; ++n) {
    const DecoherenceState s(n);
    o.expect(inner(vector_measure(s, Event::full(s.space())), vector_measure(s, Event::full(s.space()))) ==
                 GaussianScaled{1, 0, 0},
             "<E(Omega), E(Omega)> != 1");
    for (int t = 0; t < 1000 && o.ok; ++t) {
      const auto a = random_event(rng, n);
      const auto b = random_event(rng, n);
      o.expect(inner(vector_measure(s, a), vector_measure(s, b)) == functional(s, a, b), "<E(A),E(B)> != D_n(A,B)");
      const auto d = subtract(b, a);
      o.expect(vector_measure(s, unite(a, d)) == vector_measure(s, a) + vector_measure(s, d), "E is not additive");
      o.expect(functional(s, a, unite(a, d)) == GaussianScaled{functional(s, a, a).re + functional(s, a, d).re, 0, n},
               "D_n is not additive");
    }
  }
  const DecoherenceState s3(3);
  std::vector<Event> singles;
  for (PathIndex j = 0; j < 8; ++j) singles.push_back(Event::singleton(s3.space(), j));
  o.expect(strong_positivity_check(s3, singles).positive_semidefinite, "singleton Gram matrix is not PSD");
  const DecoherenceState s2(2);
  const std::vector<Event> mixed{Event::empty(s2.space()), Event::full(s2.space()), ev(2, {0, 2})};
  o.expect(strong_positivity_check(s2, mixed).positive_semidefinite, "{empty, Omega, {0,2}} Gram matrix is not PSD");
  return o;
}

Outcome scaling() {
  Outcome o;
  std::mt19937_64 rng(3);
  o.expect(scaling_check(DecoherenceState(2), DecoherenceState(3), ev(2, {0, 2})), "{0,2} does not scale");
  for (int t = 0; t < 200; ++t) {
    const auto a = random_event(rng, 3);
    o.expect(scaling_check(DecoherenceState(3), DecoherenceState(6), a, Embedding::HoldEndpoint),
             "endpoint-holding embedding does not scale");
    // zero padding keeps the scaling for events confined to one endpoint
    const Event even = intersect(a, Event(a.space(), {0, 2, 4, 6}));
    o.expect(scaling_check(DecoherenceState(3), DecoherenceState(6), even), "zero padding fails on even paths");
  }
  // mixed endpoints: the padded odd path picks up a change and meets the even one
  o.expect(!scaling_check(DecoherenceState(2), DecoherenceState(4), ev(2, {1, 2})),
           "zero padding unexpectedly scales a mixed-parity event");
  return o;
}

Outcome integral_suite() {
  Outcome o;
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) {
    const DecoherenceState s(n);
    for (int t = 0; t < 1000 && o.ok; ++t) {
      const auto f = random_variable(rng, n, false);
      const auto e = integral(s, f, IntegralStrategy::Eigen);
      o.expect(e == integral(s, f, IntegralStrategy::Definition) && e == integral(s, f, IntegralStrategy::Trace),
               "integral strategies disagree at n=" + std::to_string(n));
      const Rational alpha(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
      o.expect(integral(s, alpha * f) == alpha * e, "integral is not homogeneous");
    }
  }
  for (int n = 1; n <= 4; ++n) {
    const DecoherenceState s(n);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << s.space().size()); ++m) {
      const auto a = Event::from_mask(s.space(), m);
      o.expect(integral(s, RandomVariable::indicator(a), IntegralStrategy::Trace) == mu(s, a).to_rational(),
               "int chi_A != mu(A)");
    }
  }
  for (int n = 9; n <= 16; ++n) {
    const DecoherenceState s(n);
    for (const auto& f : {RandomVariable::ones(s.space()), RandomVariable::changes(s.space())})
      o.expect(integral(s, f).sign() >= 0, "negative integral of a nonnegative variable");
  }
  return o;
}

Outcome min_matrix_suite() {
  Outcome o;
  o.expect(min_matrix_det_check(std::vector<Rational>{Rational(3)}).determinant == 3, "1x1 determinant");
  o.expect(min_matrix_det_check(std::vector<Rational>{1, 2, 2, 5}).holds, "(1,2,2,5) determinant");
  std::mt19937_64 rng(13);
  for (int t = 0; t < 200; ++t) {
    std::vector<Rational> a;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 10); ++k) a.emplace_back(static_cast<long>(rng() % 20), 1 + static_cast<long>(rng() % 3));
    std::sort(a.begin(), a.end());
    o.expect(min_matrix_det_check(a).holds, "telescoping determinant fails");
  }
  for (int n = 1; n <= 8; ++n)
    for (int t = 0; t < 20; ++t) o.expect(psd_check(random_variable(rng, n, true)).positive_semidefinite, "fhat not PSD");
  o.expect(psd_check(RandomVariable::ones(PathSpace(3))).positive_semidefinite, "f_3 hat not PSD");
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const DecoherenceState s(n);
    const auto [a, b, c] = random_disjoint_triple(rng, n);
    auto on = [&](const Event& e) {
      auto v = random_variable(rng, n, false).values();
      for (PathIndex j = 0; j < v.size(); ++j)
        if (!e.contains(j)) v[j] = 0;
      return RandomVariable(s.space(), v);
    };
    o.expect(static_cast<bool>(disjoint_support_grade2_check(s, on(a), on(b), on(c))), "disjoint-support grade-2 fails");
  }
  const auto w = nonadditivity_witness(DecoherenceState(2));
  o.expect(w.gap != 0, "no non-additivity witness");
  return o;
}

}  // namespace

std::vector<VerifyItem> run_verification_suite() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"single-step-matrix", single_step},
      {"two-step-measure-table", two_step_table},
      {"three-step-sign-pattern", three_step_pattern},
      {"interference-composition-instances", composition_instances},
      {"three-step-preclusion-census", three_step_census},
      {"four-step-precluded-events", four_step_precluded},
      {"refined-preclusion", refined_preclusion},
      {"nested-cylinder-growth", nested_cylinders},
      {"variation-lower-bound", variation},
      {"cofinite-approximant", finite_complement_approximant},
      {"at-most-one-one-limit", at_most_one_one},
      {"nine-element-quadratic-algebra", quadratic_nine},
      {"odd-count-quadratic-algebra", quadratic_odd},
      {"change-and-ones-recurrences", recurrences},
      {"finitely-many-ones-not-strongly-disjoint", not_strongly_disjoint},
      {"integral-table", integral_table},
      {"leaves-origin-limit", leaves_origin},
      {"v-count-closed-form", v_count_forms},
      {"composition-laws", composition_laws},
      {"decoherence-structure", decoherence_structure},
      {"measure-strategy-agreement", strategy_agreement},
      {"pair-measure-trichotomy", pair_trichotomy},
      {"grade2-and-regularity", grade2_and_regularity},
      {"vector-measure", vector_measure_suite},
      {"scaling-under-embedding", scaling},
      {"integral-properties", integral_suite},
      {"min-matrix-properties", min_matrix_suite},
  };
  std::vector<VerifyItem> out;
  for (const auto& [name, run] : checks) {
    VerifyItem item;
    item.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto r = run();
      item.passed = r.ok;
      item.detail = r.detail;
    } catch (const std::exception& e) {
      item.passed = false;
      item.detail = std::string("exception: ") + e.what();
    }
    item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace qwalk
