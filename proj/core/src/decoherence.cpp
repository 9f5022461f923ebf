#include "qwalk/decoherence.hpp"

#include "qwalk/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace qwalk {

namespace {

int sign_from_changes(PathIndex j, PathIndex k) {
  if (!same_parity(j, k)) return 0;
  const int cj = std::popcount(j ^ (j >> 1));
  const int ck = std::popcount(k ^ (k >> 1));
  // same parity => cj - ck even, so i^(cj-ck) is +1 or -1
  return ((cj - ck) % 4 == 0) ? 1 : -1;
}

GaussianInt i_power_of_changes(PathIndex j) { return i_power(std::popcount(j ^ (j >> 1))); }

void require_space(const DecoherenceState& state, const Event& e) {
  if (!(e.space() == state.space()))
    throw DomainError("event over Omega_" + std::to_string(e.space().steps()) + " used with D^" +
                      std::to_string(state.steps()));
}

void require_dense_size(int steps) {
  if (steps > kDenseMaxSteps)
    throw ResourceError("dense decoherence matrix needs n <= " + std::to_string(kDenseMaxSteps) + ", got n=" +
                        std::to_string(steps));
}

std::int64_t checked_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw ResourceError("value exceeds 64-bit range");
  return v.convert_to<std::int64_t>();
}

}  // namespace

// ---------------------------------------------------------------------------

DenseDecoherence::DenseDecoherence(const PathSpace& space) {
  require_dense_size(space.steps());
  const std::uint64_t size = space.size();
  words_ = (size + 63) / 64;
  plus_.assign(size * words_, 0);
  minus_.assign(size * words_, 0);
  for (PathIndex j = 0; j < size; ++j) {
    for (PathIndex k = 0; k < size; ++k) {
      const int s = sign_from_changes(j, k);
      if (s == 0) continue;
      auto& target = s > 0 ? plus_ : minus_;
      target[j * words_ + k / 64] |= std::uint64_t{1} << (k % 64);
    }
  }
}

int DenseDecoherence::sign(PathIndex j, PathIndex k) const {
  const std::uint64_t bit = std::uint64_t{1} << (k % 64);
  if (plus_[j * words_ + k / 64] & bit) return 1;
  if (minus_[j * words_ + k / 64] & bit) return -1;
  return 0;
}

// ---------------------------------------------------------------------------

std::vector<std::complex<double>> EigenPair::psi0() const {
  const double scale = std::pow(std::sqrt(2.0), root2_power);
  std::vector<std::complex<double>> out(scaled0.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = scale * std::complex<double>(static_cast<double>(scaled0[j].re), static_cast<double>(scaled0[j].im));
  return out;
}

std::vector<std::complex<double>> EigenPair::psi1() const {
  const double scale = std::pow(std::sqrt(2.0), root2_power);
  std::vector<std::complex<double>> out(scaled1.size());
  for (std::size_t j = 0; j < out.size(); ++j)
    out[j] = scale * std::complex<double>(static_cast<double>(scaled1[j].re), static_cast<double>(scaled1[j].im));
  return out;
}

VectorMeasureValue operator+(const VectorMeasureValue& a, const VectorMeasureValue& b) {
  if (a.steps != b.steps) throw DomainError("vector measure values from different path spaces");
  return {a.first + b.first, a.second + b.second, a.steps};
}

GaussianScaled inner(const VectorMeasureValue& x, const VectorMeasureValue& y) {
  if (x.steps != y.steps) throw DomainError("vector measure values from different path spaces");
  // (x1 conj y1 + x2 conj y2) / 2^n with BigInt intermediates
  auto part = [](const GaussianInt& a, const GaussianInt& b, bool real) -> BigInt {
    const BigInt ar = a.re, ai = a.im, br = b.re, bi = b.im;
    // a * conj(b) = (ar br + ai bi) + i (ai br - ar bi)
    if (real) return ar * br + ai * bi;
    return ai * br - ar * bi;
  };
  const BigInt re = part(x.first, y.first, true) + part(x.second, y.second, true);
  const BigInt im = part(x.first, y.first, false) + part(x.second, y.second, false);
  return {checked_int64(re), checked_int64(im), x.steps};
}

// ---------------------------------------------------------------------------

DecoherenceState::Impl::Impl(PathSpace s) : space(s) {
  const auto v = changes_residue_counts(s.steps());
  // even paths have even change counts: i^c = +1 for c = 0 mod 4, -1 for 2 mod 4
  whole.even = {static_cast<std::int64_t>(v[0]) - static_cast<std::int64_t>(v[2]), 0};
  whole.odd = {0, static_cast<std::int64_t>(v[1]) - static_cast<std::int64_t>(v[3])};
}

DecoherenceState::DecoherenceState(PathSpace space) : impl_(std::make_shared<Impl>(space)) {}

int DecoherenceState::scaled_entry(PathIndex j, PathIndex k) const { return sign_from_changes(j, k); }

GaussianScaled DecoherenceState::entry(PathIndex j, PathIndex k) const {
  impl_->space.require(j);
  impl_->space.require(k);
  return {sign_from_changes(j, k), 0, steps()};
}

const DenseDecoherence& DecoherenceState::dense() const {
  require_dense_size(steps());
  std::call_once(impl_->dense_once, [this] { impl_->dense = std::make_unique<DenseDecoherence>(impl_->space); });
  return *impl_->dense;
}

AmplitudeSums DecoherenceState::amplitude_sums(const Event& event) const {
  require_space(*this, event);
  AmplitudeSums stored;
  for (const PathIndex j : event.stored()) {
    if (j & 1U)
      stored.odd += i_power_of_changes(j);
    else
      stored.even += i_power_of_changes(j);
  }
  if (!event.complemented()) return stored;
  return {impl_->whole.even - stored.even, impl_->whole.odd - stored.odd};
}

// ---------------------------------------------------------------------------

GaussianScaled functional(const DecoherenceState& state, const Event& a, const Event& b) {
  require_space(state, a);
  require_space(state, b);
  const int n = state.steps();
  std::int64_t total = 0;
  if (n <= kDenseMaxSteps) {
    const auto& dense = state.dense();
    std::vector<std::uint64_t> bmask(dense.words_per_row(), 0);
    for (const PathIndex k : b.members()) bmask[k / 64] |= std::uint64_t{1} << (k % 64);
    for (const PathIndex j : a.members()) {
      const auto plus = dense.plus_row(j);
      const auto minus = dense.minus_row(j);
      for (std::size_t w = 0; w < bmask.size(); ++w)
        total += std::popcount(plus[w] & bmask[w]) - std::popcount(minus[w] & bmask[w]);
    }
    return {total, 0, n};
  }
  const std::uint64_t ca = a.cardinality();
  const std::uint64_t cb = b.cardinality();
  constexpr std::uint64_t kCap = std::uint64_t{1} << 30;
  if (ca != 0 && cb > kCap / ca)
    throw ResourceError("direct functional over |A||B| = " + std::to_string(ca) + "*" + std::to_string(cb) +
                        " entries exceeds 2^30; use the rank-2 strategy");
  const auto bm = b.members();
  for (const PathIndex j : a.members())
    for (const PathIndex k : bm) total += state.scaled_entry(j, k);
  return {total, 0, n};
}

EigenPair eigenpair(const DecoherenceState& state) {
  const int n = state.steps();
  if (n < 1) throw DomainError("eigenpair needs n >= 1");
  if (state.space().size() > kMaterializeLimit)
    throw ResourceError("eigenvectors of length 2^" + std::to_string(n) + " exceed the materialization limit");
  const std::uint64_t size = state.space().size();
  EigenPair out;
  out.scaled0.assign(size, {});
  out.scaled1.assign(size, {});
  out.root2_power = -(n - 1);
  for (PathIndex j = 0; j < size; ++j) (j & 1U ? out.scaled1 : out.scaled0)[j] = i_power_of_changes(j);
  return out;
}

VectorMeasureValue vector_measure(const DecoherenceState& state, const Event& a) {
  const auto t = state.amplitude_sums(a);
  return {t.even.conj(), t.odd.conj(), state.steps()};
}

bool verify_eigen_equation(const DecoherenceState& state) {
  const int n = state.steps();
  const auto pair = eigenpair(state);
  const auto& dense = state.dense();
  const std::uint64_t size = state.space().size();
  // 2^n D u = 2^(n-1) u for u = scaled0, scaled1
  const std::int64_t half = std::int64_t{1} << (n - 1);
  for (const auto* u : {&pair.scaled0, &pair.scaled1}) {
    for (PathIndex j = 0; j < size; ++j) {
      GaussianInt acc;
      for (PathIndex k = 0; k < size; ++k) {
        const int s = dense.sign(j, k);
        if (s > 0) acc += (*u)[k];
        if (s < 0) acc -= (*u)[k];
      }
      if (!(acc == GaussianInt{half * (*u)[j].re, half * (*u)[j].im})) return false;
    }
  }
  return true;
}

bool verify_rank_two_reconstruction(const DecoherenceState& state) {
  require_dense_size(state.steps());
  const auto pair = eigenpair(state);
  const std::uint64_t size = state.space().size();
  // 1/2 psi psi^* = 2^-n u u^*, so 2^n D_jk must equal sum_p u_p(j) conj u_p(k)
  for (PathIndex j = 0; j < size; ++j) {
    for (PathIndex k = 0; k < size; ++k) {
      const GaussianInt rebuilt = pair.scaled0[j] * pair.scaled0[k].conj() + pair.scaled1[j] * pair.scaled1[k].conj();
      if (!(rebuilt == GaussianInt{state.scaled_entry(j, k), 0})) return false;
    }
  }
  return true;
}

bool annihilates(const DecoherenceState& state, std::span<const GaussianInt> v) {
  if (v.size() != state.space().size()) throw DomainError("vector length does not match 2^n");
  const auto& dense = state.dense();
  for (PathIndex j = 0; j < v.size(); ++j) {
    GaussianInt acc;
    for (PathIndex k = 0; k < v.size(); ++k) {
      const int s = dense.sign(j, k);
      if (s > 0) acc += v[k];
      if (s < 0) acc -= v[k];
    }
    if (!acc.is_zero()) return false;
  }
  return true;
}

PositivityReport strong_positivity_check(const DecoherenceState& state, std::span<const Event> events) {
  constexpr double kTol = 1e-9;
  if (events.size() > 12) throw DomainError("strong positivity check takes at most 12 events");
  for (const auto& e : events) require_space(state, e);
  PositivityReport report;
  report.positive_semidefinite = true;
  if (events.empty()) return report;

  const auto k = static_cast<Eigen::Index>(events.size());
  Eigen::MatrixXcd gram(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c) gram(r, c) = functional(state, events[r], events[c]).to_complex();

  // info() flags the zero pivots of a rank-deficient Gram matrix, which are
  // expected here (rank <= 2); the pivot values themselves decide.
  const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
  const Eigen::VectorXd pivots = ldlt.vectorD().real();
  report.min_pivot = pivots.minCoeff();
  if (!pivots.allFinite()) {
    report.positive_semidefinite = false;
    return report;
  }
  if (report.min_pivot < 0.0) {
    report.positive_semidefinite = report.min_pivot >= -kTol;
    report.warning = report.positive_semidefinite;
  }
  return report;
}

}  // namespace qwalk
