#pragma once

// Exact number types shared by every module: arbitrary precision integers
// and rationals, Gaussian integers, dyadic rationals and the ring Z[sqrt 2]
// localized at 2.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <compare>
#include <cstdint>
#include <string>

namespace qwalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_string(const Rational& value);
std::string decimal_string(double value);
double to_double(const Rational& value);

/// re + i*im with machine-word components.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  GaussianInt conj() const { return {re, -im}; }
  BigInt norm() const;
  bool is_zero() const { return re == 0 && im == 0; }

  GaussianInt& operator+=(const GaussianInt& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianInt& operator-=(const GaussianInt& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GaussianInt operator+(GaussianInt a, const GaussianInt& b) { return a += b; }
  friend GaussianInt operator-(GaussianInt a, const GaussianInt& b) { return a -= b; }
  friend GaussianInt operator-(const GaussianInt& a) { return {-a.re, -a.im}; }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianInt&, const GaussianInt&) = default;
};

/// i^k for any integer k.
GaussianInt i_power(std::int64_t k);

/// numerator / 2^log2_denom. The representation is kept unreduced so that
/// values on Omega_n keep their natural denominator 2^n; equality and
/// ordering compare values, not representations.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(BigInt numerator, int log2_denom);
  static DyadicRational integer(BigInt value) { return DyadicRational(std::move(value), 0); }

  const BigInt& numerator() const { return numerator_; }
  int log2_denom() const { return log2_denom_; }
  BigInt denominator() const { return BigInt(1) << log2_denom_; }

  bool is_zero() const { return numerator_ == 0; }
  int sign() const { return numerator_.sign(); }

  /// Same value with the smallest denominator.
  DyadicRational reduced() const;
  /// Same value over 2^log2_denom; the target must not be smaller than the
  /// current denominator.
  DyadicRational rescaled(int log2_denom) const;

  Rational to_rational() const;
  double to_double() const;
  /// "num/2^k" written out, e.g. "0/4" or "5/4".
  std::string to_string() const;

  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a);
  friend bool operator==(const DyadicRational& a, const DyadicRational& b);
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

 private:
  BigInt numerator_ = 0;
  int log2_denom_ = 0;
};

/// (re + i*im) / 2^log2_denom.
struct GaussianScaled {
  std::int64_t re = 0;
  std::int64_t im = 0;
  int log2_denom = 0;

  DyadicRational real() const { return {BigInt(re), log2_denom}; }
  DyadicRational imag() const { return {BigInt(im), log2_denom}; }
  std::complex<double> to_complex() const;

  friend bool operator==(const GaussianScaled& a, const GaussianScaled& b) {
    return a.real() == b.real() && a.imag() == b.imag();
  }
};

/// (a + b*sqrt(2)) / 2^k with k >= 0. Holds cos(m*pi/4), powers of sqrt(2)
/// and the closed forms built from them without rounding.
class RootTwoDyadic {
 public:
  RootTwoDyadic() = default;
  RootTwoDyadic(BigInt rational_part, BigInt root_part, int log2_denom);
  static RootTwoDyadic from(const DyadicRational& value);

  /// cos(m * pi / 4).
  static RootTwoDyadic cos_quarter_pi(std::int64_t m);
  /// sqrt(2)^e for any integer e.
  static RootTwoDyadic sqrt2_power(int e);

  const BigInt& rational_part() const { return a_; }
  const BigInt& root_part() const { return b_; }
  int log2_denom() const { return k_; }

  bool is_rational() const { return b_ == 0; }
  /// Throws DomainError when the sqrt(2) component is nonzero.
  DyadicRational to_dyadic() const;
  double to_double() const;

  friend RootTwoDyadic operator+(const RootTwoDyadic& x, const RootTwoDyadic& y);
  friend RootTwoDyadic operator-(const RootTwoDyadic& x, const RootTwoDyadic& y);
  friend RootTwoDyadic operator*(const RootTwoDyadic& x, const RootTwoDyadic& y);
  friend bool operator==(const RootTwoDyadic& x, const RootTwoDyadic& y);

 private:
  void normalize();

  BigInt a_ = 0;
  BigInt b_ = 0;
  int k_ = 0;
};

}  // namespace qwalk
