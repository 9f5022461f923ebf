#include <doctest.h>

#include "qwalk/errors.hpp"
#include "qwalk/quadratic.hpp"

#include <bit>
#include <random>

using namespace qwalk;

namespace {

// Direct restatement of the axiom over all ordered triples.
bool brute_quadratic(const SetSystem& q) {
  if (!q.has_empty() || !q.has_universe()) return false;
  for (auto a : q.members())
    for (auto b : q.members())
      for (auto c : q.members()) {
        if ((a & b) || (a & c) || (b & c)) continue;
        if (q.contains(a | b) && q.contains(a | c) && q.contains(b | c) && !q.contains(a | b | c)) return false;
      }
  return true;
}

}  // namespace

TEST_CASE("set systems are sorted and deduplicated") {
  const SetSystem q(3, {7, 0, 1, 1, 3});
  CHECK(q.members() == std::vector<SubsetMask>{0, 1, 3, 7});
  CHECK(q.has_empty());
  CHECK(q.has_universe());
  CHECK(q.index_of(3) == 2);
  CHECK(q.index_of(2) == SetSystem::npos);
  CHECK_THROWS_AS(SetSystem(3, {8}), DomainError);
  CHECK_THROWS_AS(SetSystem(kMaxUniverse + 1, {}), DomainError);
}

TEST_CASE("nine-element type-count system") {
  const SetSystem q = example12_system();
  CHECK(q.universe_size() == 9);
  CHECK(q.size() == 110);
  for (auto a : q.members()) {
    const int size = std::popcount(a);
    CHECK((size == 0 || size == 3 || size == 6 || size == 9));
  }
  const auto r = is_quadratic_algebra(q);
  CHECK(r.holds);
  CHECK_FALSE(r.counterexample.has_value());
  CHECK(r.holds == brute_quadratic(q));

  const auto nu = example12_measure(q);
  CHECK(is_q_measure(q, nu).holds);
  // {u1,d1,d2} and {u2,u3,s1}: 1/6 + 1/6 against 1/2 for the union
  const SubsetMask a = 0b000001011, b = 0b001110000;
  REQUIRE(q.contains(a));
  REQUIRE(q.contains(b));
  REQUIRE(q.contains(a | b));
  CHECK(nu.values[q.index_of(a)] + nu.values[q.index_of(b)] == Rational(1, 3));
  CHECK(nu.values[q.index_of(a | b)] == Rational(1, 2));
  // closed under complement but not under disjoint union
  for (auto m : q.members()) CHECK(q.contains(q.universe() & ~m));
  CHECK_FALSE(q.contains(0b000001011 | 0b001010000));
  CHECK(example12_label(0) == "d1");
  CHECK(example12_label(8) == "s3");
}

TEST_CASE("odd x-count systems") {
  for (int nx : {1, 3, 5})
    for (int ny : {0, 1, 2, 3}) {
      const SetSystem q = example13_system(nx, ny);
      const auto r = is_quadratic_algebra(q);
      CHECK(r.holds);
      CHECK(r.holds == brute_quadratic(q));
      CHECK(is_q_measure(q, squared_cardinality(q)).holds);
    }
  CHECK_THROWS_AS(example13_system(2, 1), DomainError);
}

TEST_CASE("counterexamples are reported") {
  // singletons and pairs of {0,1,2} in a four-element universe, without {0,1,2}
  const SetSystem q(4, {0, 1, 2, 4, 3, 5, 6, 15});
  const auto r = is_quadratic_algebra(q);
  CHECK_FALSE(r.holds);
  REQUIRE(r.counterexample.has_value());
  const auto [a, b, c] = *r.counterexample;
  CHECK((a | b | c) == 7);
  CHECK_FALSE(brute_quadratic(q));

  const SetSystem no_top(2, {0, 1});
  const auto t = is_quadratic_algebra(no_top);
  CHECK_FALSE(t.holds);
  CHECK(t.missing_universe);
}

TEST_CASE("q-measure axiom failures and bad tables") {
  const SetSystem q(2, {0, 1, 2, 3});
  QMeasureTable additive{{0, 1, 1, 2}};
  CHECK(is_q_measure(q, additive).holds);
  QMeasureTable broken{{1, 1, 1, 1}};
  // the triple (empty, {0}, {1}) gives 1 on the left and 0 on the right
  const auto r = is_q_measure(q, broken);
  CHECK_FALSE(r.holds);
  CHECK(r.lhs != r.rhs);
  CHECK_THROWS_AS(is_q_measure(q, QMeasureTable{{0, 1}}), DomainError);
  CHECK_THROWS_AS(is_q_measure(q, QMeasureTable{{0, -1, 1, 1}}), DomainError);
}

TEST_CASE("closure yields quadratic algebras carrying the squared-size measure") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 40; ++t) {
    const int u = 3 + static_cast<int>(rng() % 4);
    std::vector<SubsetMask> m;
    for (int k = 0; k < 6; ++k) m.push_back(static_cast<SubsetMask>(rng() % (1U << u)));
    const SetSystem closed = quadratic_closure(SetSystem(u, m));
    CHECK(brute_quadratic(closed));
    CHECK(is_quadratic_algebra(closed).holds);
    CHECK(is_q_measure(closed, squared_cardinality(closed)).holds);
    for (auto a : m) CHECK(closed.contains(a));
  }
}

TEST_CASE("set system files") {
  const SetSystem q = parse_set_system("# three points\n3\n-\n0,1\n{}\n2\n0,1,2\n");
  CHECK(q.universe_size() == 3);
  CHECK(q.members() == std::vector<SubsetMask>{0, 3, 4, 7});
  CHECK(format_subset(0b101) == "{0,2}");
  CHECK(format_subset(0) == "{}");
  CHECK_THROWS_AS(parse_set_system(""), DomainError);
  CHECK_THROWS_AS(parse_set_system("3\n0,5\n"), DomainError);
}

TEST_CASE("strong disjointness of infinite events") {
  const auto finitely = SymbolicEvent::finitely_many_ones();
  // disjoint from its complement, yet every approximant pair overlaps
  CHECK_FALSE(strongly_disjoint(finitely, finitely.complement(), 20).has_value());
  const auto zero = SymbolicEvent::finite_paths({{{}, 0}});
  const auto one = SymbolicEvent::finite_paths({{{1}, 1}});
  const auto hit = strongly_disjoint(zero, one, 20);
  REQUIRE(hit.has_value());
  CHECK(*hit == 1);
}
