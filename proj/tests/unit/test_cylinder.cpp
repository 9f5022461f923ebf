#include <doctest.h>

#include "oracles.hpp"
#include "qwalk/cylinder.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/qmeasure.hpp"

#include <cmath>
#include <random>

using namespace qwalk;

namespace {

std::vector<std::uint64_t> as_list(const Event& e) {
  const auto m = e.members();
  return {m.begin(), m.end()};
}

DyadicRational oracle_mu(const Event& e) {
  const int n = e.space().steps();
  return {BigInt(oracle::scaled_mu_linear(n, as_list(e))), n};
}

// Level-n prefixes of paths with at most k ones: the prefix itself has <= k ones.
Event at_most_k_prefixes(int n, int k) {
  std::vector<PathIndex> m;
  for (PathIndex j = 0; j < (PathIndex{1} << n); ++j)
    if (oracle::count_ones(n, j) <= k) m.push_back(j);
  return Event(PathSpace(n), m);
}

}  // namespace

TEST_CASE("refinement appends free bits") {
  const CylinderEvent a(Event(PathSpace(2), {0, 2}));
  CHECK(refine(a, 3).base() == Event(PathSpace(3), {0, 1, 4, 5}));
  CHECK(refine(a, 4).base() == Event(PathSpace(4), {0, 1, 2, 3, 8, 9, 10, 11}));
  CHECK(refine(a, 2) == a);
  CHECK_THROWS_AS(refine(a, 1), DomainError);
  CHECK(refine(a, 5) == a);
  CHECK(project(refine(a, 5), 2) == a);
  CHECK(project(CylinderEvent(Event(PathSpace(3), {1})), 1).base() == Event(PathSpace(1), {0}));
  const CylinderEvent co = a.complement();
  CHECK(refine(co, 4).base() == refine(a, 4).base().complement());
  CHECK(CylinderEvent::whole(0) == CylinderEvent::whole(7));
}

TEST_CASE("cylinder measure does not depend on the level") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t < 60; ++t) {
      const std::uint64_t mask = rng() & ((std::uint64_t{1} << (std::uint64_t{1} << n)) - 1);
      const CylinderEvent a(Event::from_mask(PathSpace(n), mask));
      const auto m = mu_cyl(a);
      CHECK(m == oracle_mu(a.base()));
      CHECK(mu_cyl(refine(a, n + 1)) == m);
      CHECK(mu_cyl(refine(a, n + 3)) == m);
    }
}

TEST_CASE("eventually constant paths") {
  const EventuallyConstantPath p{{1, 0}, 1};
  CHECK(p.bit(1) == 1);
  CHECK(p.bit(2) == 0);
  CHECK(p.bit(9) == 1);
  CHECK(p.prefix(0) == 0);
  CHECK(p.prefix(2) == 0b10);
  CHECK(p.prefix(4) == 0b1011);
}

TEST_CASE("approximants of symbolic events") {
  for (int n = 0; n <= 10; ++n) {
    CHECK(approximant(SymbolicEvent::at_most_k_ones(1), n).base() == at_most_k_prefixes(n, 1));
    CHECK(approximant(SymbolicEvent::at_most_k_ones(3), n).base() == at_most_k_prefixes(n, 3));
    // every prefix extends to an eventually-zero path
    CHECK(approximant(SymbolicEvent::finitely_many_ones(), n).base() == Event::full(PathSpace(n)));
    const auto zero = SymbolicEvent::finite_paths({{{}, 0}});
    CHECK(approximant(zero, n).base() == Event(PathSpace(n), {0}));
    // the complement of one path approximates to everything from below ...
    CHECK(approximant(zero.complement(), n).base() == Event::full(PathSpace(n)));
    // ... and to everything but that path from above, once n >= 1
    if (n >= 1) CHECK(upper_approximant(zero.complement(), n).base() == Event(PathSpace(n), {0}).complement());
  }
  const auto cyl = SymbolicEvent::cylinder(CylinderEvent(Event(PathSpace(2), {1, 2})));
  CHECK(approximant(cyl, 4).base() == refine(*cyl.cylinder_set(), 4).base());
  CHECK(approximant(cyl, 1).base() == Event::full(PathSpace(1)));
  CHECK(upper_approximant(cyl, 1).base() == Event::empty(PathSpace(1)));
}

TEST_CASE("leaving the origin: direct measure against the closed form") {
  const auto s = SymbolicEvent::finite_paths({{{}, 0}}).complement();
  for (int n = 1; n <= 20; ++n) {
    const Event b = Event(PathSpace(n), {0}).complement();
    const auto direct = oracle_mu(b);
    const auto closed = leaves_origin_closed_form(n);
    REQUIRE(closed.is_rational());
    CHECK(closed.to_dyadic() == direct);
    CHECK(mu_cyl(upper_approximant(s, n)) == direct);
  }
  const double expect = 1 + std::ldexp(1.0, -40) - std::cos(40 * M_PI / 4) * std::pow(std::sqrt(2.0), 2 - 40);
  CHECK(leaves_origin_closed_form(40).to_double() == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("change-count residues against the closed form") {
  for (int n = 1; n <= 30; ++n) {
    const auto counts = v_counts(n);
    const auto closed = v_counts_closed_form(n);
    for (int j = 0; j < 4; ++j) {
      REQUIRE(closed[j].is_rational());
      CHECK(closed[j].to_dyadic() == DyadicRational(BigInt(counts[j]), 0));
    }
  }
}

TEST_CASE("at most one 1: measure of the approximants") {
  for (int n = 1; n <= 20; ++n) {
    const Event a = at_most_k_prefixes(n, 1);
    CHECK(at_most_one_closed_form(n) == oracle_mu(a));
    CHECK(at_most_one_closed_form(n) == DyadicRational(BigInt(n * n - 4 * n + 5), n));
  }
}

TEST_CASE("limit verdicts") {
  LimitOptions opt;
  opt.tol = 1e-6;
  const auto r = limit_mu_hat(SymbolicEvent::at_most_k_ones(1), 40, opt);
  CHECK(r.verdict == Verdict::Converged);
  CHECK(std::abs(r.estimate) < 1e-6);
  CHECK(r.values.size() == 40);
  CHECK(r.values.front().n == 1);

  const auto back = limit_mu_hat(SymbolicEvent::finite_paths({{{}, 0}}).complement(), 48, opt);
  CHECK(back.verdict == Verdict::Converged);
  CHECK(back.estimate == doctest::Approx(1.0).epsilon(1e-6));

  // tail of 1s forever: lower approximants include 0 1 1 ... only
  const auto one = limit_mu_hat(SymbolicEvent::finite_paths({{{}, 1}}), 30, opt);
  CHECK(one.verdict == Verdict::Converged);

  CHECK_THROWS_AS(limit_mu_hat(SymbolicEvent::at_most_k_ones(1), 3, opt), DomainError);
  CHECK_THROWS_AS(limit_mu_hat(SymbolicEvent::at_most_k_ones(1), 63, opt), ResourceError);
}

TEST_CASE("verdict engine on synthetic sequences") {
  auto seq = [](auto f, int count) {
    std::vector<LimitPoint> v;
    for (int n = 1; n <= count; ++n) v.push_back({n, DyadicRational(BigInt(0), 0), f(n)});
    return v;
  };
  LimitOptions opt;
  std::vector<LimitPoint> doubling;
  for (int n = 1; n <= 40; ++n) doubling.push_back({n, DyadicRational(BigInt(1) << n, 0), std::ldexp(1.0, n)});
  const auto grow = assess_limit(doubling, opt);
  CHECK(grow.verdict == Verdict::Diverged);
  const auto flat = assess_limit(seq([](int) { return 0.25; }, 10), opt);
  CHECK(flat.verdict == Verdict::Converged);
  CHECK(flat.at_n == 5);
  const auto wobble = assess_limit(seq([](int n) { return n % 2 ? 1.0 : 0.0; }, 30), opt);
  CHECK(wobble.verdict == Verdict::Undetermined);
  CHECK(to_string(Verdict::Diverged) == "diverged");
}

TEST_CASE("nested cylinders with growing measure") {
  for (int i = 1; i <= 3; ++i) {
    const Event base = example8_base(i);
    CHECK(base.space().steps() == 3 * i);
    CHECK(base.cardinality() == static_cast<std::uint64_t>(std::pow(3, i)));
    // (9/8)^i = 9^i / 2^(3i)
    CHECK(oracle_mu(base) == DyadicRational(BigInt(static_cast<long>(std::pow(9, i))), 3 * i));
    if (i > 1) CHECK(subtract(base, refine(CylinderEvent(example8_base(i - 1)), 3 * i).base()).is_empty());
  }
  const auto seq = example8_sequence(12);
  REQUIRE(seq.size() == 12);
  for (const auto& t : seq) {
    CHECK(t.direct == (t.i <= kExample8DirectMax));
    BigInt nine = 1;
    for (int k = 0; k < t.i; ++k) nine *= 9;
    CHECK(t.value == DyadicRational(nine, 3 * t.i));
  }
  CHECK(example8_limit(130).verdict == Verdict::Diverged);
  CHECK(example8_limit(20).verdict == Verdict::Undetermined);
}

TEST_CASE("elementary-cylinder variation bound") {
  for (int n = 1; n <= 30; ++n) CHECK(variation_lower_bound(n) == DyadicRational(BigInt(1) << n, 0));
}
