#pragma once

// Events of the infinite path space Omega: cylinder sets given by a base
// event at a finite level, symbolic events given by their time-n
// approximants, and the numerical limit of mu along approximant sequences.

#include "qwalk/event.hpp"
#include "qwalk/exact.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qwalk {

/// base x {0,1} x {0,1} x ... with base an event of Omega_level.
class CylinderEvent {
 public:
  explicit CylinderEvent(Event base) : base_(std::move(base)) {}
  /// Omega itself, represented at the given level.
  static CylinderEvent whole(int level = 0) { return CylinderEvent(Event::full(PathSpace(level))); }

  int level() const { return base_.space().steps(); }
  const Event& base() const { return base_; }

  CylinderEvent complement() const { return CylinderEvent(base_.complement()); }

  /// Equal as subsets of Omega: the bases agree once refined to a common level.
  friend bool operator==(const CylinderEvent& a, const CylinderEvent& b);

 private:
  Event base_;
};

/// base x {0,1}^(to_level - level). Path j maps to (j << d) | r for every
/// r < 2^d. Throws DomainError when to_level < level.
CylinderEvent refine(const CylinderEvent& a, int to_level);

/// The set of level-`to_level` prefixes of paths in A, for to_level <= level.
CylinderEvent project(const CylinderEvent& a, int to_level);

/// mu_n(base) at the base's own level.
DyadicRational mu_cyl(const CylinderEvent& a);

/// The infinite path alpha_1 alpha_2 ... = head followed by tail repeated
/// forever (alpha_0 = 0 is implicit).
struct EventuallyConstantPath {
  std::vector<int> head;
  int tail = 0;

  /// Bit alpha_t for t >= 1.
  int bit(int t) const;
  /// The index of alpha_1 ... alpha_n in Omega_n.
  PathIndex prefix(int n) const;
  friend bool operator==(const EventuallyConstantPath&, const EventuallyConstantPath&) = default;
};

/// A subset of Omega from a closed list of kinds, each of which can produce
/// its approximants exactly.
class SymbolicEvent {
 public:
  enum class Kind {
    FinitePathSet,     // finitely many eventually constant paths
    AtMostKOnes,       // paths with at most K ones
    FinitelyManyOnes,  // paths that are eventually 0
    Cylinder,          // a cylinder set
  };

  static SymbolicEvent finite_paths(std::vector<EventuallyConstantPath> paths);
  static SymbolicEvent at_most_k_ones(int k);
  static SymbolicEvent finitely_many_ones();
  static SymbolicEvent cylinder(CylinderEvent c);

  Kind kind() const { return kind_; }
  bool complemented() const { return complemented_; }
  SymbolicEvent complement() const;

  const std::vector<EventuallyConstantPath>& paths() const { return paths_; }
  int k() const { return k_; }
  const std::optional<CylinderEvent>& cylinder_set() const { return cylinder_; }

  std::string describe() const;

 private:
  SymbolicEvent() = default;

  Kind kind_ = Kind::FinitePathSet;
  bool complemented_ = false;
  std::vector<EventuallyConstantPath> paths_;
  int k_ = 0;
  std::optional<CylinderEvent> cylinder_;
};

/// A^(n): the level-n prefixes that extend to some member of S.
CylinderEvent approximant(const SymbolicEvent& s, int n);
/// ((S')^(n))': the level-n cylinder of prefixes all of whose extensions lie in S.
CylinderEvent upper_approximant(const SymbolicEvent& s, int n);

enum class ApproximantSide {
  Auto,   // upper for complemented kinds, lower otherwise
  Lower,
  Upper,
};

struct LimitOptions {
  int window = 5;
  double tol = 1e-9;
  double blowup = 1e6;
  int growth_run = 10;
  ApproximantSide side = ApproximantSide::Auto;
};

enum class Verdict { Converged, Diverged, Undetermined };
std::string to_string(Verdict v);

struct LimitPoint {
  int n = 0;
  DyadicRational value;
  double decimal = 0.0;
};

/// A numerical finding about a sequence, not a proof.
struct LimitReport {
  std::vector<LimitPoint> values;
  Verdict verdict = Verdict::Undetermined;
  double estimate = 0.0;  // meaningful for Converged
  int at_n = 0;           // first n at which the Cauchy window was met
  int window = 0;
  double tol = 0.0;
  int n_first = 0;
  int n_last = 0;
};

/// Applies the verdict rules to an already computed sequence. Divergence (the
/// last value above blowup after growth_run strict increases) is tested first;
/// convergence needs the final `window` values to have consecutive
/// differences below tol.
LimitReport assess_limit(std::vector<LimitPoint> values, const LimitOptions& options);

/// mu(A^(n)) for n = 1..n_max followed by assess_limit.
LimitReport limit_mu_hat(const SymbolicEvent& s, int n_max, const LimitOptions& options = {});

struct Example8Term {
  int i = 0;
  DyadicRational value;
  bool direct = false;  // false: extrapolated as (9/8)^i
};

/// Computed directly while 3i <= 24, extrapolated beyond.
inline constexpr int kExample8DirectMax = 8;

/// mu(A_i) for A_i = B_1 x B_2^(i-1) x {0,1} x ..., B_1 = B_2 = {010, 100, 110}.
std::vector<Example8Term> example8_sequence(int i_max);
/// The level-3i base of A_i.
Event example8_base(int i);
/// The verdict engine run over example8_sequence (i plays the role of n).
LimitReport example8_limit(int i_max, const LimitOptions& options = {});

/// (sum over the 2^n elementary cylinders of mu^(1/2))^2 = 2^n.
DyadicRational variation_lower_bound(int n);

/// v_n(j) = #{paths with c_n = j mod 4}.
std::array<std::uint64_t, 4> v_counts(int n);
/// 2^(n-2) + sqrt(2)^(n-2) cos((n - 2j) pi / 4), exact.
std::array<RootTwoDyadic, 4> v_counts_closed_form(int n);

/// 1 + 2^-n - cos(n pi / 4) sqrt(2)^(2-n): mu_n of Omega_n minus the all-zero path.
RootTwoDyadic leaves_origin_closed_form(int n);
/// (n^2 - 4n + 5) / 2^n: mu of the approximant of "at most one 1".
DyadicRational at_most_one_closed_form(int n);

}  // namespace qwalk
