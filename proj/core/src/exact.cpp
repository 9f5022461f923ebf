#include "qwalk/exact.hpp"

#include "qwalk/errors.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

namespace qwalk {

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string decimal_string(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt GaussianInt::norm() const {
  BigInt r = re;
  BigInt i = im;
  return r * r + i * i;
}

GaussianInt i_power(std::int64_t k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// ---------------------------------------------------------------------------
// DyadicRational

DyadicRational::DyadicRational(BigInt numerator, int log2_denom)
    : numerator_(std::move(numerator)), log2_denom_(log2_denom) {
  if (log2_denom < 0) throw DomainError("dyadic denominator exponent must be nonnegative");
}

DyadicRational DyadicRational::reduced() const {
  if (numerator_ == 0) return {};
  BigInt num = numerator_;
  int k = log2_denom_;
  while (k > 0 && !boost::multiprecision::bit_test(num, 0)) {
    num >>= 1;
    --k;
  }
  return {num, k};
}

DyadicRational DyadicRational::rescaled(int log2_denom) const {
  if (log2_denom < log2_denom_) {
    const auto r = reduced();
    if (r.log2_denom_ > log2_denom) throw DomainError("cannot rescale dyadic to a smaller denominator");
    return {r.numerator_ << (log2_denom - r.log2_denom_), log2_denom};
  }
  return {numerator_ << (log2_denom - log2_denom_), log2_denom};
}

Rational DyadicRational::to_rational() const { return Rational(numerator_, denominator()); }

double DyadicRational::to_double() const {
  if (boost::multiprecision::msb(abs(numerator_) + 1) < 1000)
    return std::ldexp(numerator_.convert_to<double>(), -log2_denom_);
  return qwalk::to_double(to_rational());
}

std::string DyadicRational::to_string() const { return numerator_.str() + "/" + denominator().str(); }

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  const int k = std::max(a.log2_denom_, b.log2_denom_);
  return {(a.numerator_ << (k - a.log2_denom_)) + (b.numerator_ << (k - b.log2_denom_)), k};
}

DyadicRational operator-(const DyadicRational& a) { return {-a.numerator_, a.log2_denom_}; }

DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) { return a + (-b); }

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
  return {a.numerator_ * b.numerator_, a.log2_denom_ + b.log2_denom_};
}

bool operator==(const DyadicRational& a, const DyadicRational& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const int k = std::max(a.log2_denom_, b.log2_denom_);
  const BigInt lhs = a.numerator_ << (k - a.log2_denom_);
  const BigInt rhs = b.numerator_ << (k - b.log2_denom_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::complex<double> GaussianScaled::to_complex() const {
  return {std::ldexp(static_cast<double>(re), -log2_denom), std::ldexp(static_cast<double>(im), -log2_denom)};
}

// ---------------------------------------------------------------------------
// RootTwoDyadic

RootTwoDyadic::RootTwoDyadic(BigInt rational_part, BigInt root_part, int log2_denom)
    : a_(std::move(rational_part)), b_(std::move(root_part)), k_(log2_denom) {
  if (k_ < 0) {
    a_ <<= -k_;
    b_ <<= -k_;
    k_ = 0;
  }
  normalize();
}

RootTwoDyadic RootTwoDyadic::from(const DyadicRational& value) {
  return {value.numerator(), BigInt(0), value.log2_denom()};
}

void RootTwoDyadic::normalize() {
  using boost::multiprecision::bit_test;
  if (a_ == 0 && b_ == 0) {
    k_ = 0;
    return;
  }
  while (k_ > 0 && !bit_test(a_, 0) && !bit_test(b_, 0)) {
    a_ >>= 1;
    b_ >>= 1;
    --k_;
  }
}

RootTwoDyadic RootTwoDyadic::cos_quarter_pi(std::int64_t m) {
  switch (((m % 8) + 8) % 8) {
    case 0: return {1, 0, 0};
    case 1: return {0, 1, 1};
    case 2: return {0, 0, 0};
    case 3: return {0, -1, 1};
    case 4: return {-1, 0, 0};
    case 5: return {0, -1, 1};
    case 6: return {0, 0, 0};
    default: return {0, 1, 1};
  }
}

RootTwoDyadic RootTwoDyadic::sqrt2_power(int e) {
  // sqrt(2)^(2h) = 2^h, sqrt(2)^(2h+1) = sqrt(2) * 2^h
  const int h = (e >= 0) ? e / 2 : -((-e + 1) / 2);
  const bool odd = (e - 2 * h) == 1;
  const BigInt a = odd ? BigInt(0) : BigInt(1);
  const BigInt b = odd ? BigInt(1) : BigInt(0);
  return {a, b, -h};
}

DyadicRational RootTwoDyadic::to_dyadic() const {
  if (b_ != 0) throw DomainError("value has an irrational sqrt(2) component");
  return {a_, k_};
}

double RootTwoDyadic::to_double() const {
  const double a = DyadicRational(a_, k_).to_double();
  const double b = DyadicRational(b_, k_).to_double();
  return a + b * std::sqrt(2.0);
}

RootTwoDyadic operator+(const RootTwoDyadic& x, const RootTwoDyadic& y) {
  const int k = std::max(x.k_, y.k_);
  return {(x.a_ << (k - x.k_)) + (y.a_ << (k - y.k_)), (x.b_ << (k - x.k_)) + (y.b_ << (k - y.k_)), k};
}

RootTwoDyadic operator-(const RootTwoDyadic& x, const RootTwoDyadic& y) {
  return x + RootTwoDyadic(-y.a_, -y.b_, y.k_);
}

RootTwoDyadic operator*(const RootTwoDyadic& x, const RootTwoDyadic& y) {
  return {x.a_ * y.a_ + 2 * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.k_ + y.k_};
}

bool operator==(const RootTwoDyadic& x, const RootTwoDyadic& y) {
  // both sides are kept normalized
  return x.k_ == y.k_ && x.a_ == y.a_ && x.b_ == y.b_;
}

}  // namespace qwalk
