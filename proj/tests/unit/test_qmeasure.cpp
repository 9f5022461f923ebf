#include <doctest.h>

#include "oracles.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/qmeasure.hpp"

#include <random>

using namespace qwalk;

namespace {

constexpr MeasureStrategy kAll[] = {MeasureStrategy::Dense, MeasureStrategy::Pairwise, MeasureStrategy::Rank2};

std::vector<std::uint64_t> as_list(const Event& e) {
  const auto m = e.members();
  return {m.begin(), m.end()};
}

Event random_event(std::mt19937_64& rng, const PathSpace& s) {
  std::vector<PathIndex> m;
  for (PathIndex j = 0; j < s.size(); ++j)
    if (rng() % 3 == 0) m.push_back(j);
  return Event(s, m);
}

}  // namespace

TEST_CASE("all strategies match the brute-force measure on every event up to four steps") {
  for (int n = 0; n <= 4; ++n) {
    const DecoherenceState st(n);
    const std::uint64_t subsets = std::uint64_t{1} << st.space().size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      const Event a = Event::from_mask(st.space(), mask);
      const DyadicRational want(BigInt(oracle::scaled_mu(n, as_list(a))), n);
      for (auto s : kAll) CHECK(mu(st, a, s) == want);
      CHECK(scaled_mu(st, a) == want.numerator() << (n - want.log2_denom()));
      CHECK(is_precluded(st, a) == want.is_zero());
    }
  }
}

TEST_CASE("strategies agree on random events") {
  std::mt19937_64 rng(3);
  for (int n = 5; n <= 10; ++n) {
    const DecoherenceState st(n);
    for (int t = 0; t < 40; ++t) {
      const Event a = random_event(rng, st.space());
      if (a.is_empty()) continue;
      const DyadicRational want(BigInt(oracle::scaled_mu_linear(n, as_list(a))), n);
      for (auto s : kAll) CHECK(mu(st, a, s) == want);
      CHECK(mu(st, a.complement()) == DyadicRational(BigInt(oracle::scaled_mu_linear(n, as_list(a.complement()))), n));
    }
  }
}

TEST_CASE("measure edge cases") {
  const DecoherenceState st(3);
  CHECK(mu(st, Event::empty(st.space())).is_zero());
  CHECK(mu(st, Event::full(st.space())) == DyadicRational(BigInt(1), 0));
  CHECK_THROWS_AS(mu(st, Event::empty(st.space()), MeasureStrategy::Pairwise), DomainError);
  CHECK_THROWS_AS(mu(st, Event::full(PathSpace(4))), DomainError);
  // above the dense range the double sum walks entries, up to 2^30 of them
  CHECK(mu(DecoherenceState(13), Event::full(PathSpace(13)), MeasureStrategy::Dense) == DyadicRational(BigInt(1), 0));
  CHECK_THROWS_AS(mu(DecoherenceState(16), Event::full(PathSpace(16)), MeasureStrategy::Dense), ResourceError);
  // rank-two path handles huge co-sparse events
  const DecoherenceState big(60);
  CHECK(mu(big, Event::full(big.space())) == DyadicRational(BigInt(1), 0));
}

TEST_CASE("pair interference takes three values") {
  for (int n = 1; n <= 6; ++n) {
    const DecoherenceState st(n);
    for (PathIndex i = 0; i < st.space().size(); ++i)
      for (PathIndex j = i + 1; j < st.space().size(); ++j) {
        const auto r = interference(st, i, j);
        const int sign = static_cast<int>(oracle::scaled_entry(n, i, j).re);
        CHECK(r.term == DyadicRational(BigInt(2 * sign), n));
        CHECK(r.pair_measure == DyadicRational(BigInt(2 + 2 * sign), n));
        const auto want = sign == 0 ? InterferenceClass::NoInterference
                                    : (sign > 0 ? InterferenceClass::Constructive : InterferenceClass::Destructive);
        CHECK(r.kind == want);
        CHECK(r.pair_measure == mu(st, Event(st.space(), {i, j})));
      }
  }
  CHECK_THROWS_AS(interference(DecoherenceState(2), 1, 1), DomainError);
  CHECK(to_string(InterferenceClass::Destructive) == "destructive");
}

TEST_CASE("composition laws for pair interference") {
  for (int n = 1; n <= 6; ++n) CHECK(interference_composition_check(DecoherenceState(n)).holds);
  const auto other = interference_composition_check(DecoherenceState(2), ChainReading::DoesNotInterfere);
  CHECK_FALSE(other.holds);
  REQUIRE(other.counterexample.has_value());
  CHECK(other.law == 'a');
  CHECK_THROWS_AS(interference_composition_check(DecoherenceState(9)), ResourceError);
}

TEST_CASE("grade-2 additivity and regularity on random disjoint triples") {
  std::mt19937_64 rng(8);
  for (int n = 1; n <= 7; ++n) {
    const DecoherenceState st(n);
    for (int t = 0; t < 50; ++t) {
      std::vector<PathIndex> parts[3];
      for (PathIndex j = 0; j < st.space().size(); ++j) {
        const auto r = rng() % 4;
        if (r < 3) parts[r].push_back(j);
      }
      const Event a(st.space(), parts[0]), b(st.space(), parts[1]), c(st.space(), parts[2]);
      CHECK(grade2_check(st, a, b, c));
      CHECK(regularity_check(st, a, b));
    }
  }
  const DecoherenceState st(2);
  const Event a(st.space(), {0, 1});
  CHECK_THROWS_AS(grade2_check(st, a, a, Event::empty(st.space())), DomainError);
}

TEST_CASE("precluded event census against brute force") {
  for (int n = 1; n <= 4; ++n) {
    const DecoherenceState st(n);
    std::vector<std::vector<PathIndex>> want;
    const std::uint64_t subsets = std::uint64_t{1} << st.space().size();
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      const Event a = Event::from_mask(st.space(), mask);
      if (oracle::scaled_mu(n, as_list(a)) == 0) want.push_back(a.members());
    }
    std::sort(want.begin(), want.end(), [](const auto& x, const auto& y) {
      return x.size() != y.size() ? x.size() < y.size() : x < y;
    });
    const auto got = enumerate_precluded(st);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].members() == want[i]);
    // single-threaded run gives the same ordering
    PreclusionOptions one;
    one.threads = 1;
    const auto serial = enumerate_precluded(st, one);
    CHECK(serial == got);
  }
}

TEST_CASE("bounded preclusion search") {
  const DecoherenceState st(5);
  PreclusionOptions opt;
  opt.max_cardinality = 2;
  const auto pairs = enumerate_precluded(st, opt);
  std::size_t want = 0;
  for (PathIndex i = 0; i < 32; ++i)
    for (PathIndex j = i + 1; j < 32; ++j) want += oracle::scaled_entry(5, i, j).re == -1;
  CHECK(pairs.size() == want);
  for (const auto& e : pairs) CHECK(e.cardinality() == 2);

  CHECK_THROWS_AS(enumerate_precluded(DecoherenceState(5)), ResourceError);
  PreclusionOptions k5;
  k5.max_cardinality = 5;
  CHECK_THROWS_AS(enumerate_precluded(DecoherenceState(6), k5), ResourceError);
  CHECK(preclusion_search_cost(6, 4) > preclusion_search_cost(6, 2));
}

TEST_CASE("embedding into longer paths") {
  const DecoherenceState s2(2), s4(4);
  // single-parity events scale under zero padding
  const Event even(s2.space(), {0, 2});
  const Event odd(s2.space(), {1, 3});
  CHECK(scaling_check(s2, s4, even));
  CHECK(scaling_check(s2, s4, odd));
  CHECK(embed(even, s4.space()) == Event(s4.space(), {0, 8}));
  // a mixed-parity event does not
  const Event mixed(s2.space(), {1, 2});
  CHECK_FALSE(scaling_check(s2, s4, mixed));
  CHECK(embed(mixed, s4.space(), Embedding::HoldEndpoint) == Event(s4.space(), {7, 8}));
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Event a = random_event(rng, s2.space());
    CHECK(scaling_check(s2, s4, a, Embedding::HoldEndpoint));
  }
  CHECK_THROWS_AS(embed(Event(s4.space(), {0}), s2.space()), DomainError);
}
