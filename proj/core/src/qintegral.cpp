#include "qwalk/qintegral.hpp"

#include "qwalk/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace qwalk {

namespace {

void require_space(const DecoherenceState& state, const RandomVariable& f) {
  if (!(f.space() == state.space()))
    throw DomainError("random variable over Omega_" + std::to_string(f.space().steps()) + " used with mu_" +
                      std::to_string(state.steps()));
}

// f+ and f- over a common denominator L.
struct ScaledParts {
  std::vector<BigInt> plus;
  std::vector<BigInt> minus;
  BigInt denom = 1;
};

ScaledParts scale(const RandomVariable& f) {
  ScaledParts out;
  for (const auto& v : f.values()) out.denom = boost::multiprecision::lcm(out.denom, boost::multiprecision::denominator(v));
  out.plus.reserve(f.values().size());
  out.minus.reserve(f.values().size());
  for (const auto& v : f.values()) {
    const BigInt x = boost::multiprecision::numerator(v) * (out.denom / boost::multiprecision::denominator(v));
    out.plus.push_back(x > 0 ? x : BigInt(0));
    out.minus.push_back(x < 0 ? BigInt(-x) : BigInt(0));
  }
  return out;
}

template <typename T>
T min_entry(const std::vector<T>& plus, const std::vector<T>& minus, PathIndex i, PathIndex j) {
  return std::min(plus[i], plus[j]) - std::min(minus[i], minus[j]);
}

template <typename T>
T definition_sum(const DecoherenceState& state, const std::vector<T>& plus, const std::vector<T>& minus) {
  const std::uint64_t size = state.space().size();
  T total = 0;
  for (PathIndex i = 0; i < size; ++i)
    for (PathIndex j = i & 1U; j < size; j += 2) {
      const int s = state.scaled_entry(i, j);
      if (s > 0) total += min_entry(plus, minus, i, j);
      if (s < 0) total -= min_entry(plus, minus, i, j);
    }
  return total;
}

template <typename T>
T trace_sum(const DecoherenceState& state, const std::vector<T>& plus, const std::vector<T>& minus) {
  const auto& dense = state.dense();
  const std::uint64_t size = state.space().size();
  T total = 0;
  // (fhat D)_ii = sum_k fhat_ik D_ki; row i of D equals its column i
  for (PathIndex i = 0; i < size; ++i) {
    const auto prow = dense.plus_row(i);
    const auto mrow = dense.minus_row(i);
    for (std::size_t w = 0; w < prow.size(); ++w) {
      for (std::uint64_t bits = prow[w]; bits; bits &= bits - 1)
        total += min_entry(plus, minus, i, w * 64 + std::countr_zero(bits));
      for (std::uint64_t bits = mrow[w]; bits; bits &= bits - 1)
        total -= min_entry(plus, minus, i, w * 64 + std::countr_zero(bits));
    }
  }
  return total;
}

template <typename Sum>
Rational quadratic_strategy(const DecoherenceState& state, const RandomVariable& f, Sum&& sum) {
  const int n = state.steps();
  if (n > kQuadraticIntegralMaxSteps)
    throw ResourceError("this integral strategy sums 4^n terms; needs n <= " +
                        std::to_string(kQuadraticIntegralMaxSteps) + ", use eigen");
  const auto parts = scale(f);
  BigInt largest = 0;
  for (const auto& v : parts.plus) largest = std::max(largest, v);
  for (const auto& v : parts.minus) largest = std::max(largest, v);
  const BigInt bound = BigInt(1) << (62 - 2 * n);
  BigInt total;
  if (largest <= bound) {
    std::vector<std::int64_t> p, m;
    for (const auto& v : parts.plus) p.push_back(v.convert_to<std::int64_t>());
    for (const auto& v : parts.minus) m.push_back(v.convert_to<std::int64_t>());
    total = sum(p, m, std::int64_t{});
  } else {
    total = sum(parts.plus, parts.minus, BigInt{});
  }
  return Rational(total, parts.denom << n);
}

// Layer-cake form of sum_ij min(a_i, a_j) s_i s_j over each parity class,
// where s_i = i^c(i) up to the factor i on odd paths.
BigInt layered_form(const std::vector<BigInt>& a) {
  std::vector<PathIndex> order;
  for (PathIndex j = 0; j < a.size(); ++j)
    if (a[j] > 0) order.push_back(j);
  std::sort(order.begin(), order.end(), [&](PathIndex x, PathIndex y) { return a[x] > a[y] || (a[x] == a[y] && x < y); });
  BigInt total = 0;
  std::int64_t s0 = 0, s1 = 0;
  for (std::size_t pos = 0; pos < order.size();) {
    const BigInt level = a[order[pos]];
    while (pos < order.size() && a[order[pos]] == level) {
      const PathIndex j = order[pos++];
      const int sign = (std::popcount(j ^ (j >> 1)) % 4 < 2) ? 1 : -1;
      (j & 1U ? s1 : s0) += sign;
    }
    const BigInt next = pos < order.size() ? a[order[pos]] : BigInt(0);
    total += (level - next) * (BigInt(s0) * s0 + BigInt(s1) * s1);
  }
  return total;
}

Rational eigen_strategy(const DecoherenceState& state, const RandomVariable& f) {
  const auto parts = scale(f);
  const BigInt total = layered_form(parts.plus) - layered_form(parts.minus);
  return Rational(total, parts.denom << state.steps());
}

void require_materializable(const PathSpace& space) {
  if (space.size() > kMaterializeLimit)
    throw ResourceError("random variable on 2^" + std::to_string(space.steps()) + " paths is too large");
}

}  // namespace

// ---------------------------------------------------------------------------

RandomVariable::RandomVariable(PathSpace space, std::vector<Rational> values)
    : space_(space), values_(std::move(values)) {
  if (values_.size() != space_.size())
    throw DomainError("random variable needs 2^" + std::to_string(space_.steps()) + " = " +
                      std::to_string(space_.size()) + " values, got " + std::to_string(values_.size()));
}

RandomVariable RandomVariable::ones(const PathSpace& space) {
  require_materializable(space);
  std::vector<Rational> v;
  for (const int x : ones_vector(space)) v.emplace_back(x);
  return {space, std::move(v)};
}

RandomVariable RandomVariable::changes(const PathSpace& space) {
  require_materializable(space);
  std::vector<Rational> v;
  for (const int x : changes_vector(space)) v.emplace_back(x);
  return {space, std::move(v)};
}

RandomVariable RandomVariable::indicator(const Event& a) {
  require_materializable(a.space());
  std::vector<Rational> v(a.space().size(), Rational(0));
  for (const PathIndex j : a.members()) v[j] = 1;
  return {a.space(), std::move(v)};
}

RandomVariable RandomVariable::constant(const PathSpace& space, const Rational& c) {
  require_materializable(space);
  return {space, std::vector<Rational>(space.size(), c)};
}

RandomVariable RandomVariable::positive_part() const {
  auto v = values_;
  for (auto& x : v)
    if (x < 0) x = 0;
  return {space_, std::move(v)};
}

RandomVariable RandomVariable::negative_part() const {
  auto v = values_;
  for (auto& x : v) x = x < 0 ? Rational(-x) : Rational(0);
  return {space_, std::move(v)};
}

bool RandomVariable::nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](const Rational& x) { return x >= 0; });
}

Event RandomVariable::support() const {
  std::vector<PathIndex> s;
  for (PathIndex j = 0; j < values_.size(); ++j)
    if (values_[j] != 0) s.push_back(j);
  return Event(space_, std::move(s));
}

RandomVariable operator+(const RandomVariable& a, const RandomVariable& b) {
  if (!(a.space_ == b.space_)) throw DomainError("random variables over different path spaces");
  auto v = a.values_;
  for (std::size_t j = 0; j < v.size(); ++j) v[j] += b.values_[j];
  return {a.space_, std::move(v)};
}

RandomVariable operator-(const RandomVariable& a, const RandomVariable& b) { return a + Rational(-1) * b; }

RandomVariable operator*(const Rational& alpha, const RandomVariable& f) {
  auto v = f.values_;
  for (auto& x : v) x *= alpha;
  return {f.space_, std::move(v)};
}

Rational parse_rational(const std::string& raw) {
  const auto first = raw.find_first_not_of(" \t\r");
  if (first == std::string::npos) throw DomainError("empty number");
  const std::string text = raw.substr(first, raw.find_last_not_of(" \t\r") - first + 1);
  auto parse_int = [&](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size() || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw DomainError("not a number: '" + text + "'");
    BigInt v(s.substr(start));
    return s[0] == '-' ? BigInt(-v) : v;
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos)
      throw DomainError("not a number: '" + text + "'");
    std::string whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    BigInt w = parse_int(whole);
    if (negative) w = -w;
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational v = Rational(w) + Rational(BigInt(frac), scale);
    return negative ? Rational(-v) : v;
  }
  return Rational(parse_int(text));
}

RandomVariable parse_random_variable(const PathSpace& space, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<Rational> values;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    values.push_back(parse_rational(line));
  }
  return {space, std::move(values)};
}

MinMatrix::MinMatrix(RandomVariable f)
    : f_(std::move(f)), plus_(f_.positive_part()), minus_(f_.negative_part()) {}

Rational MinMatrix::entry(PathIndex i, PathIndex j) const {
  f_.space().require(i);
  f_.space().require(j);
  return std::min(plus_[i], plus_[j]) - std::min(minus_[i], minus_[j]);
}

// ---------------------------------------------------------------------------

Rational integral(const DecoherenceState& state, const RandomVariable& f, IntegralStrategy strategy) {
  require_space(state, f);
  switch (strategy) {
    case IntegralStrategy::Definition:
      return quadratic_strategy(state, f, [&](const auto& p, const auto& m, auto) { return BigInt(definition_sum(state, p, m)); });
    case IntegralStrategy::Trace:
      return quadratic_strategy(state, f, [&](const auto& p, const auto& m, auto) { return BigInt(trace_sum(state, p, m)); });
    case IntegralStrategy::Eigen: return eigen_strategy(state, f);
  }
  throw DomainError("unknown integral strategy");
}

DeterminantReport min_matrix_det_check(std::span<const Rational> a) {
  if (a.size() > 10) throw ResourceError("determinant check takes at most 10 values");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) throw DomainError("min-matrix values must be nonnegative");
    if (i > 0 && a[i] < a[i - 1]) throw DomainError("min-matrix values must be sorted ascending");
  }
  DeterminantReport report;
  if (a.empty()) {
    report.determinant = report.product = 1;
    report.holds = true;
    return report;
  }
  const std::size_t k = a.size();
  std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = std::min(a[i], a[j]);
  Rational det = 1;
  for (std::size_t c = 0; c < k && det != 0; ++c) {
    std::size_t pivot = c;
    while (pivot < k && m[pivot][c] == 0) ++pivot;
    if (pivot == k) {
      det = 0;
      break;
    }
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      if (m[r][c] == 0) continue;
      const Rational factor = m[r][c] / m[c][c];
      for (std::size_t j = c; j < k; ++j) m[r][j] -= factor * m[c][j];
    }
  }
  Rational product = a[0];
  for (std::size_t i = 1; i < k; ++i) product *= a[i] - a[i - 1];
  report.determinant = det;
  report.product = product;
  report.holds = det == product;
  return report;
}

PsdReport psd_check(const RandomVariable& f) {
  if (!f.nonnegative()) throw DomainError("psd check needs f >= 0");
  const std::uint64_t size = f.space().size();
  if (size > 4096) throw ResourceError("psd check needs 2^n <= 4096");
  std::vector<Rational> sorted = f.values();
  std::sort(sorted.begin(), sorted.end());
  // min(a_i, a_j) = sum_{k <= min(i,j)} (a_k - a_(k-1)): LDL^T with unit lower
  // triangular ones and these pivots
  PsdReport report;
  for (std::size_t k = 0; k < sorted.size(); ++k) report.pivots.push_back(k == 0 ? sorted[0] : sorted[k] - sorted[k - 1]);
  bool psd = std::all_of(report.pivots.begin(), report.pivots.end(), [](const Rational& d) { return d >= 0; });

  if (size <= 64) {
    const std::size_t k = sorted.size();
    std::vector<std::vector<Rational>> m(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) m[i][j] = std::min(sorted[i], sorted[j]);
    for (std::size_t c = 0; c < k; ++c) {
      const Rational d = m[c][c];
      if (d != report.pivots[c]) psd = false;
      if (d < 0) psd = false;
      if (d == 0) {
        // a zero pivot needs a zero column below it
        for (std::size_t r = c + 1; r < k; ++r)
          if (m[r][c] != 0) psd = false;
        continue;
      }
      for (std::size_t r = c + 1; r < k; ++r) {
        const Rational factor = m[r][c] / d;
        for (std::size_t j = c; j < k; ++j) m[r][j] -= factor * m[c][j];
      }
    }
    report.elimination_checked = true;
  }
  report.positive_semidefinite = psd;
  return report;
}

Grade2IntegralReport disjoint_support_grade2_check(const DecoherenceState& state, const RandomVariable& f,
                                                   const RandomVariable& g, const RandomVariable& h) {
  require_space(state, f);
  require_space(state, g);
  require_space(state, h);
  const Event sf = f.support(), sg = g.support(), sh = h.support();
  if (!disjoint(sf, sg) || !disjoint(sf, sh) || !disjoint(sg, sh))
    throw DomainError("random variables must have pairwise disjoint supports");
  Grade2IntegralReport report;
  const RandomVariable fg = f + g, fh = f + h, gh = g + h, fgh = fg + h;
  if (state.steps() <= 10) {
    const MinMatrix mfgh(fgh), mfg(fg), mfh(fh), mgh(gh), mf(f), mg(g), mh(h);
    const std::uint64_t size = state.space().size();
    for (PathIndex i = 0; i < size && report.operator_identity; ++i)
      for (PathIndex j = 0; j < size; ++j) {
        const Rational rhs = mfg.entry(i, j) + mfh.entry(i, j) + mgh.entry(i, j) - mf.entry(i, j) - mg.entry(i, j) -
                             mh.entry(i, j);
        if (mfgh.entry(i, j) != rhs) {
          report.operator_identity = false;
          break;
        }
      }
    report.operator_checked = true;
  }
  const auto in = [&](const RandomVariable& x) { return integral(state, x, IntegralStrategy::Eigen); };
  report.integral_identity = in(fgh) == in(fg) + in(fh) + in(gh) - in(f) - in(g) - in(h);
  return report;
}

NonAdditivityWitness nonadditivity_witness(const DecoherenceState& state) {
  const int n = state.steps();
  if (n < 2) throw DomainError("a non-additivity witness needs n >= 2");
  const std::uint64_t size = state.space().size();
  const int slots = 4;
  const int combos = 81;  // 3^4
  auto decode = [&](int code) {
    std::vector<Rational> v(size, Rational(0));
    for (int s = 0; s < slots; ++s) {
      v[s] = code % 3;
      code /= 3;
    }
    return RandomVariable(state.space(), std::move(v));
  };
  for (int fc = 1; fc < combos; ++fc) {
    const RandomVariable f = decode(fc);
    const Rational inf = integral(state, f);
    for (int gc = 1; gc < combos; ++gc) {
      const RandomVariable g = decode(gc);
      if (disjoint(f.support(), g.support())) continue;
      const Rational gap = integral(state, f + g) - inf - integral(state, g);
      if (gap != 0) return {f, g, gap};
    }
  }
  throw std::logic_error("no non-additivity witness found");
}

}  // namespace qwalk
