#pragma once

// Derivations acting on jets and their exponentials (Lie series).
//
// For a derivation v whose coefficients all vanish to order >= 2, v^j(f) has
// order >= ord(f) + j, so e^v f = sum_j v^j(f)/j! is a finite sum on jets and
// is computed exactly. The diagonal order-1 case v = sum lambda_i z_i d_i has
// no exact rational exponential; it is handled by exponential_semisimple in
// floating point.

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "fdet/jet.hpp"
#include "fdet/scale_norm.hpp"

namespace fdet {

/// v = sum_i v_i d/dz_i.
class Derivation {
 public:
  explicit Derivation(std::vector<Jet> components);
  static Derivation zero(std::size_t n_vars, unsigned trunc);
  /// c(z) d/dz_{i+1}
  static Derivation along(std::size_t i, const Jet& c);

  std::size_t n_vars() const { return components_.size(); }
  unsigned trunc() const { return components_.front().trunc(); }
  const std::vector<Jet>& components() const { return components_; }
  const Jet& operator[](std::size_t i) const { return components_[i]; }

  /// Coefficient order omega = min_i ord(v_i); kInfiniteOrder for v = 0.
  unsigned order() const;
  bool is_zero() const { return order() == kInfiniteOrder; }

  Derivation& operator+=(const Derivation& o);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(const Derivation& a, const Derivation& b) { return a + (-b); }
  friend Derivation operator*(const QComplex& c, const Derivation& v);
  Derivation operator-() const;
  friend bool operator==(const Derivation& a, const Derivation& b) { return a.components_ == b.components_; }

 private:
  std::vector<Jet> components_;
};

/// v(f) = sum_i v_i d_i f.
Jet apply(const Derivation& v, const Jet& f);

/// e^v f, exact. Requires order(v) >= 2; order 1 and 0 are rejected with
/// DomainError (see exponential_semisimple for the diagonal linear case).
Jet exponential(const Derivation& v, const Jet& f);

/// Components e^v z_i; jet_compose(f, exp_as_map(v)) == exponential(v, f).
JetMap exp_as_map(const Derivation& v);

/// Map of the operator e^{v_m} ... e^{v_1} e^{v_0} for vs = (v_0, ..., v_m);
/// identity for the empty sequence.
JetMap exp_product(std::span<const Derivation> vs, std::size_t n_vars, unsigned trunc);

/// Eigenvalues lambda_i when v = sum lambda_i z_i d_i exactly.
std::optional<std::vector<QComplex>> diagonal_eigenvalues(const Derivation& v);

using FloatJet = std::map<Exponent, std::complex<double>, GradedLex>;

/// e^v f for v = sum lambda_i z_i d_i: each monomial z^alpha is scaled by
/// exp(lambda . alpha).
FloatJet exponential_semisimple(std::span<const std::complex<double>> eigenvalues, const Jet& f);

/// 3C < s for a 1-bounded estimate with s <= tau.
bool check_exp_criterion(const NormEstimate& estimate, double s);

struct ProductCriterion {
  bool ok = false;
  double sum = 0;     // sum of C_i
  double s = 0;
  double margin = 0;  // s - 3 * sum
};

/// 3 sum C_i < s for 1-bounded estimates with s <= min tau.
ProductCriterion check_product_criterion(std::span<const NormEstimate> estimates, double s);

}  // namespace fdet
