#pragma once

// The n-truncated decoherence matrix D^n of the two-site walk with
// transition amplitude U = (1/sqrt 2) [[1, i], [i, 1]]:
//
//   D^n_{jk} = 2^-n * i^(c_n(j) - c_n(k)) * [j, k same parity]
//
// Every entry is 0 or +-1/2^n. The matrix has rank two; its range is spanned
// by psi_0 (supported on even paths) and psi_1 (odd paths), both with
// eigenvalue 1/2.

#include "qwalk/event.hpp"
#include "qwalk/exact.hpp"
#include "qwalk/paths.hpp"

#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace qwalk {

/// Dense matrix is only built up to this n (2^12 x 2^12 entries).
inline constexpr int kDenseMaxSteps = 12;

/// 2^n * D^n stored as two bit matrices: plus(j) marks the +1 entries of
/// row j, minus(j) the -1 entries.
class DenseDecoherence {
 public:
  explicit DenseDecoherence(const PathSpace& space);

  std::size_t words_per_row() const { return words_; }
  std::span<const std::uint64_t> plus_row(PathIndex j) const { return {plus_.data() + j * words_, words_}; }
  std::span<const std::uint64_t> minus_row(PathIndex j) const { return {minus_.data() + j * words_, words_}; }
  int sign(PathIndex j, PathIndex k) const;

 private:
  std::size_t words_;
  std::vector<std::uint64_t> plus_;
  std::vector<std::uint64_t> minus_;
};

/// Amplitude sums T_0(A) = sum_{j in A even} i^c(j), T_1(A) = sum over odd j.
/// D_n(A, B) = 2^-n (T_0(A) conj T_0(B) + T_1(A) conj T_1(B)).
struct AmplitudeSums {
  GaussianInt even;
  GaussianInt odd;
};

/// psi_p = (sqrt 2)^root2_power * scaled_p with scaled_p(j) = i^c(j) on the
/// paths of parity p and 0 elsewhere; root2_power = -(n-1).
struct EigenPair {
  std::vector<GaussianInt> scaled0;
  std::vector<GaussianInt> scaled1;
  int root2_power = 0;

  std::vector<std::complex<double>> psi0() const;
  std::vector<std::complex<double>> psi1() const;
};

/// E(A) = 2^(-n/2) * (first, second), an element of C^2.
struct VectorMeasureValue {
  GaussianInt first;
  GaussianInt second;
  int steps = 0;

  friend VectorMeasureValue operator+(const VectorMeasureValue& a, const VectorMeasureValue& b);
  friend bool operator==(const VectorMeasureValue&, const VectorMeasureValue&) = default;
};

/// <x, y>, conjugate-linear in the second argument.
GaussianScaled inner(const VectorMeasureValue& x, const VectorMeasureValue& y);

class DecoherenceState {
 public:
  explicit DecoherenceState(PathSpace space);
  explicit DecoherenceState(int steps) : DecoherenceState(PathSpace(steps)) {}

  const PathSpace& space() const { return impl_->space; }
  int steps() const { return impl_->space.steps(); }

  /// 2^n * D^n_{jk} in {-1, 0, 1}; no range check.
  int scaled_entry(PathIndex j, PathIndex k) const;
  GaussianScaled entry(PathIndex j, PathIndex k) const;

  /// Built on first use; throws ResourceError above kDenseMaxSteps.
  const DenseDecoherence& dense() const;

  AmplitudeSums amplitude_sums(const Event& event) const;
  /// T_0, T_1 of the whole space, from the change-count residues.
  const AmplitudeSums& whole_space_sums() const { return impl_->whole; }

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;

  struct Impl {
    explicit Impl(PathSpace s);
    PathSpace space;
    AmplitudeSums whole;
    mutable std::once_flag dense_once;
    mutable std::unique_ptr<DenseDecoherence> dense;
  };
};

/// D_n(A, B) as the plain double sum of entries over A x B. Uses the dense
/// bit rows for n <= 12 and the entry oracle above that; throws
/// ResourceError when |A| * |B| exceeds 2^30 there.
GaussianScaled functional(const DecoherenceState& state, const Event& a, const Event& b);

/// Needs n >= 1.
EigenPair eigenpair(const DecoherenceState& state);

/// E(A) = (<chi_A, psi_0>, <chi_A, psi_1>) / sqrt 2.
VectorMeasureValue vector_measure(const DecoherenceState& state, const Event& a);

/// D^n psi_p = psi_p / 2 checked in integer arithmetic on the dense matrix.
bool verify_eigen_equation(const DecoherenceState& state);
/// 1/2 |psi_0><psi_0| + 1/2 |psi_1><psi_1| equals the entry oracle everywhere.
bool verify_rank_two_reconstruction(const DecoherenceState& state);
/// D^n v = 0 for the given vector (which should be orthogonal to psi_0, psi_1).
bool annihilates(const DecoherenceState& state, std::span<const GaussianInt> v);

struct PositivityReport {
  bool positive_semidefinite = false;
  /// A negative pivot within tolerance of zero was seen.
  bool warning = false;
  double min_pivot = 0.0;
  explicit operator bool() const { return positive_semidefinite; }
};

/// Checks that [D_n(A_i, A_j)] is positive semi-definite (at most 12 events).
/// The Gram structure guarantees it; this is a numerical guard with a pivoted
/// LDL^T factorization and tolerance 1e-9.
PositivityReport strong_positivity_check(const DecoherenceState& state, std::span<const Event> events);

}  // namespace qwalk
