#include "fdet/qcomplex.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fdet/errors.hpp"

namespace fdet {

double round_up(double x) { return x == 0.0 ? 0.0 : std::nextafter(x, std::numeric_limits<double>::infinity()); }

double upper_double(const Rational& q) {
  // get_d truncates toward zero, so one step up is an upper bound for q >= 0.
  const double d = q.get_d();
  if (sgn(q) == 0) return 0.0;
  return sgn(q) > 0 ? round_up(d) : d;
}

double QComplex::abs_upper() const {
  if (sgn(im_) == 0) return upper_double(abs(re_));
  if (sgn(re_) == 0) return upper_double(abs(im_));
  return round_up(std::hypot(upper_double(abs(re_)), upper_double(abs(im_))));
}

QComplex& QComplex::operator+=(const QComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

QComplex& QComplex::operator-=(const QComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

QComplex& QComplex::operator*=(const QComplex& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

QComplex& QComplex::operator/=(const QComplex& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  const Rational d = o.norm_squared();
  *this *= o.conj();
  re_ /= d;
  im_ /= d;
  return *this;
}

std::string QComplex::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::ostringstream os;
  if (sgn(re_) != 0) {
    os << re_.get_str();
    if (sgn(im_) > 0) os << '+';
  }
  if (im_ == 1) os << 'i';
  else if (im_ == -1) os << "-i";
  else os << im_.get_str() << "*i";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) { return os << z.str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) throw ParseError("bad rational '" + text + "'");
  if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace fdet
