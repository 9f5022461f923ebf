#include <doctest.h>

#include "oracles.hpp"
#include "qwalk/decoherence.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/paths.hpp"

#include <random>

using namespace qwalk;

namespace {

Event random_event(std::mt19937_64& rng, const PathSpace& s) {
  std::vector<PathIndex> m;
  for (PathIndex j = 0; j < s.size(); ++j)
    if (rng() & 1U) m.push_back(j);
  return Event(s, m);
}

std::vector<std::uint64_t> as_list(const Event& e) {
  const auto m = e.members();
  return {m.begin(), m.end()};
}

}  // namespace

TEST_CASE("entries match the amplitude product") {
  for (int n = 0; n <= 8; ++n) {
    const DecoherenceState st(n);
    for (PathIndex j = 0; j < st.space().size(); ++j)
      for (PathIndex k = 0; k < st.space().size(); ++k) {
        const auto want = oracle::scaled_entry(n, j, k);
        REQUIRE(want.im == 0);
        CHECK(st.scaled_entry(j, k) == want.re);
        CHECK(st.entry(j, k) == GaussianScaled{want.re, 0, n});
        CHECK(st.dense().sign(j, k) == want.re);
      }
  }
}

TEST_CASE("entry range and dense size checks") {
  const DecoherenceState st(3);
  CHECK_THROWS_AS(st.entry(8, 0), DomainError);
  CHECK_THROWS_AS(DecoherenceState(kDenseMaxSteps + 1).dense(), ResourceError);
}

TEST_CASE("whole-space amplitude sums") {
  for (int n = 0; n <= 14; ++n) {
    const DecoherenceState st(n);
    oracle::Gauss want[2];
    for (std::uint64_t j = 0; j < (std::uint64_t{1} << n); ++j) {
      const auto z = oracle::amplitude(n, j);
      want[j & 1U].re += z.re;
      want[j & 1U].im += z.im;
    }
    const auto& w = st.whole_space_sums();
    CHECK(w.even.re == want[0].re);
    CHECK(w.even.im == want[0].im);
    CHECK(w.odd.re == want[1].re);
    CHECK(w.odd.im == want[1].im);
    const auto via_event = st.amplitude_sums(Event::full(st.space()));
    CHECK(via_event.even == w.even);
    CHECK(via_event.odd == w.odd);
  }
}

TEST_CASE("functional matches the double sum") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 7; ++n) {
    const DecoherenceState st(n);
    for (int t = 0; t < 30; ++t) {
      const Event a = random_event(rng, st.space());
      const Event b = random_event(rng, st.space());
      oracle::Gauss want{};
      for (auto j : as_list(a))
        for (auto k : as_list(b)) {
          const auto e = oracle::scaled_entry(n, j, k);
          want.re += e.re;
          want.im += e.im;
        }
      const auto got = functional(st, a, b);
      CHECK(got == GaussianScaled{want.re, want.im, n});
      // Hermitian: D(B, A) = conj D(A, B)
      const auto back = functional(st, b, a);
      CHECK(back == GaussianScaled{want.re, -want.im, n});
    }
  }
  CHECK_THROWS_AS(functional(DecoherenceState(2), Event(PathSpace(2), {0}), Event(PathSpace(3), {0})),
                  DomainError);
}

TEST_CASE("functional above the dense range uses the entry oracle") {
  const DecoherenceState st(14);
  const Event a(st.space(), {0, 5, 100, 9999});
  const Event b(st.space(), {2, 7, 4000});
  long long re = 0;
  for (auto j : as_list(a))
    for (auto k : as_list(b)) re += oracle::scaled_entry(14, j, k).re;
  CHECK(functional(st, a, b).real() == DyadicRational(BigInt(re), 14));
}

TEST_CASE("eigenvectors satisfy D psi = psi / 2") {
  for (int n = 1; n <= 10; ++n) {
    const DecoherenceState st(n);
    CHECK(verify_eigen_equation(st));
    CHECK(verify_rank_two_reconstruction(st));
    const auto p = eigenpair(st);
    CHECK(p.root2_power == -(n - 1));
    for (PathIndex j = 0; j < st.space().size(); ++j) {
      const auto z = oracle::amplitude(n, j);
      const auto& on = (j & 1U) ? p.scaled1[j] : p.scaled0[j];
      const auto& off = (j & 1U) ? p.scaled0[j] : p.scaled1[j];
      CHECK(on.re == z.re);
      CHECK(on.im == z.im);
      CHECK(off.is_zero());
    }
  }
  CHECK_THROWS_AS(eigenpair(DecoherenceState(0)), DomainError);
}

TEST_CASE("vectors orthogonal to both eigenvectors are annihilated") {
  for (int n = 2; n <= 8; ++n) {
    const DecoherenceState st(n);
    const auto size = st.space().size();
    // two paths of the same parity, weighted so the overlap with psi cancels
    std::vector<GaussianInt> v(size);
    const PathIndex j = 0, k = 2;
    v[j] = i_power(changes_count(st.space(), j));
    v[k] = GaussianInt{0, 0} - i_power(changes_count(st.space(), k));
    CHECK(annihilates(st, v));
    std::vector<GaussianInt> w(size);
    w[1] = GaussianInt{1, 0};
    CHECK_FALSE(annihilates(st, w));
  }
}

TEST_CASE("vector measure reproduces the functional") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 8; ++n) {
    const DecoherenceState st(n);
    for (int t = 0; t < 20; ++t) {
      const Event a = random_event(rng, st.space());
      const Event b = random_event(rng, st.space());
      CHECK(inner(vector_measure(st, a), vector_measure(st, b)) == functional(st, a, b));
      if (disjoint(a, b))
        CHECK(vector_measure(st, unite(a, b)) == vector_measure(st, a) + vector_measure(st, b));
    }
  }
}

TEST_CASE("Gram matrices of events are positive semidefinite") {
  std::mt19937_64 rng(17);
  for (int n = 1; n <= 6; ++n) {
    const DecoherenceState st(n);
    for (int t = 0; t < 10; ++t) {
      std::vector<Event> events;
      for (int e = 0; e < 6; ++e) events.push_back(random_event(rng, st.space()));
      const auto r = strong_positivity_check(st, events);
      CHECK(r.positive_semidefinite);
      CHECK(r.min_pivot > -1e-9);
    }
  }
  const DecoherenceState st(3);
  std::vector<Event> many(13, Event::full(st.space()));
  CHECK_THROWS_AS(strong_positivity_check(st, many), DomainError);
}
