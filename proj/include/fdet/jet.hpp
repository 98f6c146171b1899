#pragma once

// Truncated multivariate power series (jets) over exact complex rationals.
//
// A Jet carries its number of variables and truncation degree N; terms of
// total degree > N are dropped by every operation. Operands of binary
// operations must agree on both.

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <vector>

#include "fdet/qcomplex.hpp"

namespace fdet {

using Exponent = std::vector<unsigned>;

unsigned total_degree(const Exponent& e);

/// Graded lexicographic order: lower total degree first, then z1 > z2 > ...
/// within a degree (z1^2 before z1*z2 before z2^2).
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

inline constexpr unsigned kInfiniteOrder = std::numeric_limits<unsigned>::max();

class Jet {
 public:
  using Terms = std::map<Exponent, QComplex, GradedLex>;

  Jet(std::size_t n_vars, unsigned trunc);

  static Jet constant(std::size_t n_vars, unsigned trunc, const QComplex& c);
  /// z_{i+1}; `i` is zero-based.
  static Jet variable(std::size_t n_vars, unsigned trunc, std::size_t i);
  static Jet monomial(std::size_t n_vars, unsigned trunc, Exponent e, const QComplex& c = 1);

  std::size_t n_vars() const { return n_vars_; }
  unsigned trunc() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  QComplex coeff(const Exponent& e) const;
  /// Adds c to the coefficient of z^e; ignored when |e| > trunc.
  void add_term(const Exponent& e, const QComplex& c);

  /// Smallest total degree with a nonzero coefficient; kInfiniteOrder for 0.
  unsigned order() const;
  /// Largest total degree present; 0 for the zero jet.
  unsigned degree() const;

  /// Part of total degree exactly d.
  Jet homogeneous_part(unsigned d) const;
  /// Drops all terms of degree >= d (reduction modulo M^d).
  Jet mod_power(unsigned d) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const QComplex& c);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const QComplex& c) { return a *= c; }
  friend Jet operator*(const QComplex& c, Jet a) { return a *= c; }
  friend Jet operator*(const Jet& a, const Jet& b);
  Jet operator-() const;

  friend bool operator==(const Jet& a, const Jet& b);

 private:
  void check_compatible(const Jet& o) const;

  std::size_t n_vars_;
  unsigned trunc_;
  Terms terms_;
};

Jet jet_add(const Jet& f, const Jet& g);
Jet jet_mul(const Jet& f, const Jet& g);
Jet jet_scale(const Jet& f, const QComplex& c);

/// f^k at the truncation of f.
Jet jet_pow(const Jet& f, unsigned k);

/// Partial derivative with respect to z_{i+1}. The result keeps trunc but is
/// only meaningful up to degree trunc-1 when f is the jet of a germ.
Jet jet_derive(const Jet& f, std::size_t i);

/// Germ of map (C^n,0) -> (C^n,0) given by its n component jets.
class JetMap {
 public:
  explicit JetMap(std::vector<Jet> components);

  static JetMap identity(std::size_t n_vars, unsigned trunc);

  std::size_t n_vars() const { return components_.size(); }
  unsigned trunc() const { return components_.front().trunc(); }
  const std::vector<Jet>& components() const { return components_; }
  const Jet& operator[](std::size_t i) const { return components_[i]; }

  friend bool operator==(const JetMap& a, const JetMap& b) { return a.components_ == b.components_; }

 private:
  std::vector<Jet> components_;
};

/// f o phi, truncated at trunc.
Jet jet_compose(const Jet& f, const JetMap& phi);
/// outer o inner, componentwise.
JetMap compose_maps(const JetMap& outer, const JetMap& inner);

std::complex<double> evaluate(const Jet& f, std::span<const std::complex<double>> point);

/// Plain text such as "z1^2 + 3*z1*z2 - 1/2i*z2^3".
std::string to_string(const Jet& f);

/// Monomials of n variables of degree <= max_degree in graded-lex order,
/// with a dense index.
class MonomialIndex {
 public:
  MonomialIndex(std::size_t n_vars, unsigned max_degree);

  std::size_t size() const { return monomials_.size(); }
  std::size_t n_vars() const { return n_vars_; }
  unsigned max_degree() const { return max_degree_; }
  const Exponent& operator[](std::size_t k) const { return monomials_[k]; }
  const std::vector<Exponent>& monomials() const { return monomials_; }
  /// Index of e, or size() when |e| > max_degree.
  std::size_t index(const Exponent& e) const;
  /// Index range [begin, end) of monomials of degree exactly d.
  std::pair<std::size_t, std::size_t> degree_range(unsigned d) const;

 private:
  std::size_t n_vars_;
  unsigned max_degree_;
  std::vector<Exponent> monomials_;
  std::map<Exponent, std::size_t> lookup_;
  std::vector<std::size_t> degree_start_;
};

}  // namespace fdet
