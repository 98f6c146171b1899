#pragma once

// Recursive-descent parser for polynomial expressions, shared by the jet and
// circle-ring text formats. The Ring policy supplies:
//   Value scalar(const QComplex&);
//   Value identifier(std::string_view name, std::optional<long> call_arg);
//   std::optional<QComplex> as_scalar(const Value&);
// and Value must support +, -, unary -, * and * by QComplex.

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "fdet/errors.hpp"
#include "fdet/qcomplex.hpp"

namespace fdet::detail {

template <typename Ring>
class ExprParser {
 public:
  using Value = decltype(std::declval<Ring&>().scalar(QComplex{}));

  ExprParser(std::string_view text, Ring& ring) : text_(text), ring_(ring) {}

  Value parse() {
    Value v = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expression() {
    skip_ws();
    Value v = accept('-') ? -term() : (accept('+'), term());
    for (;;) {
      if (accept('+')) v = v + term();
      else if (accept('-')) v = v - term();
      else return v;
    }
  }

  Value term() {
    Value v = power();
    for (;;) {
      if (accept('*')) {
        v = v * power();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        Value d = power();
        std::optional<QComplex> c = ring_.as_scalar(d);
        if (!c || c->is_zero()) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        v = v * (QComplex(1) / *c);
      } else {
        return v;
      }
    }
  }

  Value power() {
    if (accept('-')) return -power();
    Value base = primary();
    if (accept('^')) {
      skip_ws();
      const long k = integer();
      if (k < 0) fail("negative exponent");
      Value r = ring_.scalar(1);
      for (long i = 0; i < k; ++i) r = r * base;
      return r;
    }
    return base;
  }

  long integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) neg = text_[pos_++] == '-';
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    const long v = std::stol(std::string(text_.substr(start, pos_ - start)));
    return neg ? -v : v;
  }

  // A number or parenthesised group may be followed directly by `i`.
  Value maybe_imaginary(Value v) {
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return v * QComplex::i();
    }
    return v;
  }

  Value primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expression();
      if (!accept(')')) fail("expected ')'");
      return maybe_imaginary(std::move(v));
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return maybe_imaginary(ring_.scalar(number()));
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      if (name == "i") return ring_.scalar(QComplex::i());
      std::optional<long> arg;
      if (accept('(')) {
        arg = integer();
        if (!accept(')')) fail("expected ')'");
      }
      try {
        return ring_.identifier(name, arg);
      } catch (const ParseError& e) {
        pos_ = start;
        fail(std::string(e.what()) + " '" + std::string(name) + "'");
      }
    }
    fail("unexpected character");
  }

  // Decimal literal converted exactly: "0.25" -> 1/4.
  QComplex number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    std::size_t frac = 0;
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      const std::size_t fs = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      digits += std::string(text_.substr(fs, pos_ - fs));
      frac = pos_ - fs;
    }
    if (digits.empty()) fail("bad number");
    Rational q(mpz_class(digits, 10));
    if (frac > 0) {
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
      q /= Rational(den);
    }
    return QComplex(q);
  }

  std::string_view text_;
  Ring& ring_;
  std::size_t pos_ = 0;
};

}  // namespace fdet::detail
