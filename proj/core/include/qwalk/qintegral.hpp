#pragma once

// The quantum integral of a random variable f on Omega_n:
//
//   int f dmu_n = sum_{i,j} fhat_ij D^n_ij,  fhat_ij = min(f+(i), f+(j)) - min(f-(i), f-(j))

#include "qwalk/decoherence.hpp"
#include "qwalk/event.hpp"
#include "qwalk/exact.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qwalk {

/// Definition and Trace materialize O(4^n) terms; allowed up to this n.
inline constexpr int kQuadraticIntegralMaxSteps = 12;

class RandomVariable {
 public:
  RandomVariable(PathSpace space, std::vector<Rational> values);

  static RandomVariable ones(const PathSpace& space);
  static RandomVariable changes(const PathSpace& space);
  static RandomVariable indicator(const Event& a);
  static RandomVariable constant(const PathSpace& space, const Rational& c);

  const PathSpace& space() const { return space_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& operator[](PathIndex j) const { return values_[j]; }

  /// f = f+ - f-, f+, f- >= 0, f+ f- = 0.
  RandomVariable positive_part() const;
  RandomVariable negative_part() const;
  bool nonnegative() const;
  /// {j : f(j) != 0}.
  Event support() const;

  friend RandomVariable operator+(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator-(const RandomVariable& a, const RandomVariable& b);
  friend RandomVariable operator*(const Rational& alpha, const RandomVariable& f);
  friend bool operator==(const RandomVariable&, const RandomVariable&) = default;

 private:
  PathSpace space_;
  std::vector<Rational> values_;
};

/// One rational per line ("3", "-1/2", "0.25"), 2^n lines in index order.
RandomVariable parse_random_variable(const PathSpace& space, const std::string& text);
/// Exact parse of an integer, fraction or finite decimal.
Rational parse_rational(const std::string& text);

/// fhat as an entry oracle.
class MinMatrix {
 public:
  explicit MinMatrix(RandomVariable f);
  const RandomVariable& source() const { return f_; }
  std::uint64_t size() const { return f_.space().size(); }
  Rational entry(PathIndex i, PathIndex j) const;

 private:
  RandomVariable f_;
  RandomVariable plus_;
  RandomVariable minus_;
};

enum class IntegralStrategy {
  Definition,  // sum_{i,j} min(f(i), f(j)) D_ij over f+ and f-
  Trace,       // tr(fhat D^n) along the rows of D^n
  Eigen,       // 1/2 <fhat psi_0, psi_0> + 1/2 <fhat psi_1, psi_1> by layers
};

Rational integral(const DecoherenceState& state, const RandomVariable& f,
                  IntegralStrategy strategy = IntegralStrategy::Eigen);

struct DeterminantReport {
  bool holds = false;
  Rational determinant;  // by exact elimination
  Rational product;      // a_1 (a_2 - a_1) ... (a_n - a_(n-1))
  explicit operator bool() const { return holds; }
};

/// a must be sorted ascending, nonnegative, at most 10 entries.
DeterminantReport min_matrix_det_check(std::span<const Rational> a);

struct PsdReport {
  bool positive_semidefinite = false;
  /// LDL^T pivots of fhat in ascending-value order.
  std::vector<Rational> pivots;
  /// The pivots were also obtained by exact elimination (2^n <= 64).
  bool elimination_checked = false;
  explicit operator bool() const { return positive_semidefinite; }
};

/// f >= 0, 2^n <= 4096.
PsdReport psd_check(const RandomVariable& f);

struct Grade2IntegralReport {
  bool operator_identity = true;
  bool operator_checked = false;  // entrywise check runs for n <= 10
  bool integral_identity = false;
  explicit operator bool() const { return operator_identity && integral_identity; }
};

/// f, g, h with pairwise disjoint supports.
Grade2IntegralReport disjoint_support_grade2_check(const DecoherenceState& state, const RandomVariable& f,
                                                   const RandomVariable& g, const RandomVariable& h);

struct NonAdditivityWitness {
  RandomVariable f;
  RandomVariable g;
  Rational gap;  // int (f+g) - int f - int g
};

/// First pair (f outer, g inner) of {0,1,2}-valued variables on the first
/// min(2^n, 4) paths, counted in base 3 with path 0 least significant, whose
/// supports overlap and whose integrals are not additive. Needs n >= 2.
NonAdditivityWitness nonadditivity_witness(const DecoherenceState& state);

}  // namespace qwalk
