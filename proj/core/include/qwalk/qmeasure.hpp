#pragma once

// The n-truncated q-measure mu_n(A) = D_n(A, A), interference between pairs
// of paths, and the search for precluded events (mu_n = 0).

#include "qwalk/decoherence.hpp"
#include "qwalk/event.hpp"
#include "qwalk/exact.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace qwalk {

enum class MeasureStrategy {
  Dense,     // sum of matrix entries over A x A
  Pairwise,  // pair measures with the grade-2 expansion; needs |A| >= 1
  Rank2,     // 1/2 |<chi_A, psi_0>|^2 + 1/2 |<chi_A, psi_1>|^2
};

/// Exact mu_n(A) over denominator 2^n.
DyadicRational mu(const DecoherenceState& state, const Event& a, MeasureStrategy strategy = MeasureStrategy::Rank2);

/// 2^n * mu_n(A) = |T_0(A)|^2 + |T_1(A)|^2.
BigInt scaled_mu(const DecoherenceState& state, const Event& a);

bool is_precluded(const DecoherenceState& state, const Event& a);

enum class InterferenceClass { NoInterference, Constructive, Destructive };
std::string_view to_string(InterferenceClass c);

struct Interference {
  DyadicRational term;  // I_ij = 2 Re D_ij
  InterferenceClass kind = InterferenceClass::NoInterference;
  DyadicRational pair_measure;  // mu_n({i, j})
};

/// Throws DomainError for i == j.
Interference interference(const DecoherenceState& state, PathIndex i, PathIndex j);

/// How the first clause for non-interfering chains is read: "i n j and j n k"
/// implies either that i and k interfere, or that they do not.
enum class ChainReading { Interferes, DoesNotInterfere };

struct CompositionReport {
  bool holds = true;
  /// First failing ordered triple (i, j, k) and the law that failed ('a'..'d').
  std::optional<std::array<PathIndex, 3>> counterexample;
  char law = 0;
  explicit operator bool() const { return holds; }
};

/// Exhaustive check of the four composition laws over ordered triples of
/// distinct paths. Needs n <= 8.
CompositionReport interference_composition_check(const DecoherenceState& state,
                                                 ChainReading reading = ChainReading::Interferes);

/// mu(AuBuC) = mu(AuB) + mu(AuC) + mu(BuC) - mu(A) - mu(B) - mu(C); the
/// events must be mutually disjoint.
bool grade2_check(const DecoherenceState& state, const Event& a, const Event& b, const Event& c);

/// For disjoint A, B: mu(A) = 0 => mu(AuB) = mu(B), and mu(AuB) = 0 =>
/// mu(A) = mu(B).
bool regularity_check(const DecoherenceState& state, const Event& a, const Event& b);

struct PreclusionOptions {
  /// Limit the search to events of at most this many paths.
  std::optional<int> max_cardinality;
  /// Lift the default size bounds.
  bool force = false;
  /// 0 = worker_count().
  unsigned threads = 0;
};

/// Every nonempty precluded event, ordered by cardinality and then
/// lexicographically by ascending members. Default bounds: n <= 4 for the
/// full census, n <= 6 with max_cardinality <= 4. Throws ResourceError
/// beyond them unless forced.
std::vector<Event> enumerate_precluded(const DecoherenceState& state, const PreclusionOptions& options = {});

/// Rough number of subsets the search would visit.
double preclusion_search_cost(int steps, std::optional<int> max_cardinality);

/// Lifting an event of Omega_m into Omega_n, n >= m.
enum class Embedding {
  ZeroPad,       // append n-m zero bits to every path
  HoldEndpoint,  // append n-m copies of the endpoint bit
};

Event embed(const Event& a, const PathSpace& target, Embedding how = Embedding::ZeroPad);

/// mu_m(A) == 2^(n-m) mu_n(embed(A)).
bool scaling_check(const DecoherenceState& state_m, const DecoherenceState& state_n, const Event& a,
                   Embedding how = Embedding::ZeroPad);

}  // namespace qwalk
