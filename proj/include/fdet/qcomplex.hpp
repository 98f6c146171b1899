#pragma once

// Complex numbers with exact rational real and imaginary parts.

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace fdet {

using Rational = mpq_class;

class QComplex {
 public:
  QComplex() = default;
  QComplex(long v) : re_(v), im_(0) {}  // NOLINT: implicit from integers
  QComplex(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
  QComplex(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static QComplex i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  QComplex conj() const { return {re_, -im_}; }
  Rational norm_squared() const { return Rational(re_ * re_ + im_ * im_); }

  /// |z| rounded upward to a double.
  double abs_upper() const;
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  QComplex& operator+=(const QComplex& o);
  QComplex& operator-=(const QComplex& o);
  QComplex& operator*=(const QComplex& o);
  QComplex& operator/=(const QComplex& o);

  friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
  friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
  friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
  friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }
  QComplex operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q" for reals, otherwise text like "1-2/3*i".
  std::string str() const;

 private:
  Rational re_;
  Rational im_;
};

std::ostream& operator<<(std::ostream& os, const QComplex& z);

/// Parses a canonical rational "p" or "p/q" (no whitespace).
Rational parse_rational(const std::string& text);

/// Smallest double strictly above x; 0 stays 0.
double round_up(double x);

/// Upper bound for a nonnegative rational as a double.
double upper_double(const Rational& q);

}  // namespace fdet
