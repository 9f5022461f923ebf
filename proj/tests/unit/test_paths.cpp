#include <doctest.h>

#include "oracles.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/event.hpp"
#include "qwalk/paths.hpp"

using namespace qwalk;

TEST_CASE("path space bounds") {
  CHECK_NOTHROW(PathSpace(0));
  CHECK_NOTHROW(PathSpace{kMaxSteps});
  CHECK_THROWS_AS(PathSpace(-1), DomainError);
  CHECK_THROWS_AS(PathSpace(kMaxSteps + 1), DomainError);
  CHECK(PathSpace(0).size() == 1);
  CHECK(PathSpace(5).size() == 32);
  CHECK_THROWS_AS(PathSpace(3).require(8), DomainError);
}

TEST_CASE("change and ones counts match the bit walk") {
  for (int n = 0; n <= 10; ++n) {
    const PathSpace s(n);
    const auto c = changes_vector(s);
    const auto f = ones_vector(s);
    for (PathIndex j = 0; j < s.size(); ++j) {
      CHECK(changes_count(s, j) == oracle::count_changes(n, j));
      CHECK(ones_count(s, j) == oracle::count_ones(n, j));
      CHECK(c[j] == oracle::count_changes(n, j));
      CHECK(f[j] == oracle::count_ones(n, j));
    }
  }
  // the three-step change vector
  const std::vector<int> c3 = {0, 1, 2, 1, 2, 3, 2, 1};
  CHECK(changes_vector(PathSpace(3)) == c3);
}

TEST_CASE("change residue counts match direct counting") {
  for (int n = 0; n <= 16; ++n) {
    std::array<std::uint64_t, 4> want{};
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) ++want[oracle::count_changes(n, j) % 4];
    CHECK(changes_residue_counts(n) == want);
  }
}

TEST_CASE("event construction and set algebra") {
  const PathSpace s(3);
  const Event a(s, {5, 1, 1, 3});
  CHECK(a.members() == std::vector<PathIndex>{1, 3, 5});
  CHECK(a.cardinality() == 3);
  CHECK_THROWS_AS(Event(s, {8}), DomainError);

  const Event co = a.complement();
  CHECK(co.complemented());
  CHECK(co.cardinality() == 5);
  CHECK(co.members() == std::vector<PathIndex>{0, 2, 4, 6, 7});
  CHECK(co == Event(s, {0, 2, 4, 6, 7}));
  CHECK(co.complement() == a);

  const Event b(s, {3, 4});
  CHECK(unite(a, b).members() == std::vector<PathIndex>{1, 3, 4, 5});
  CHECK(intersect(a, b).members() == std::vector<PathIndex>{3});
  CHECK(subtract(a, b).members() == std::vector<PathIndex>{1, 5});
  CHECK(intersect(co, b).members() == std::vector<PathIndex>{4});
  CHECK(unite(co, b).members() == std::vector<PathIndex>{0, 2, 3, 4, 6, 7});
  CHECK(subtract(co, b).members() == std::vector<PathIndex>{0, 2, 6, 7});
  CHECK(disjoint(a, co));
  CHECK_FALSE(disjoint(a, b));

  CHECK(Event::full(s).cardinality() == 8);
  CHECK(Event::empty(s).is_empty());
  CHECK(Event::from_mask(s, 0b101001) == Event(s, {0, 3, 5}));
  CHECK(Event(s, {0, 3, 5}).mask() == 0b101001);
  CHECK(co.contains(0));
  CHECK_FALSE(co.contains(1));
}

TEST_CASE("event operations reject mixed spaces") {
  const Event a(PathSpace(2), {0});
  const Event b(PathSpace(3), {0});
  CHECK_THROWS_AS(unite(a, b), DomainError);
  CHECK_THROWS_AS(intersect(a, b), DomainError);
}

TEST_CASE("large complemented events stay small") {
  const PathSpace s(40);
  const Event co = Event(s, {0}).complement();
  CHECK(co.cardinality() == (std::uint64_t{1} << 40) - 1);
  CHECK(co.stored().size() == 1);
  CHECK_THROWS_AS(co.members(), ResourceError);
}

TEST_CASE("index list parsing") {
  CHECK(parse_index_list("0,2, 5") == std::vector<PathIndex>{0, 2, 5});
  CHECK(parse_index_list("").empty());
  CHECK_THROWS_AS(parse_index_list("1,x"), DomainError);
  CHECK_THROWS_AS(parse_index_list("-1"), DomainError);
}
