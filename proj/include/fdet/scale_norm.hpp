#pragma once

// Computable Banach-scale norms on jets and k-bounded operator estimates.
//
// The scale uses the l1-majorant norm |f|_s = sum |a_alpha| s^|alpha|, which
// dominates the polydisc sup-norm, is submultiplicative and satisfies the
// Cauchy estimate |d_i f|_s <= sigma^{-1} |f|_{s+sigma}. All floating-point
// results are rounded upward. Norms are computed on jets, so every claim is
// modulo terms of degree > trunc.

#include <string>
#include <vector>

#include <json.hpp>

#include "fdet/jet.hpp"

namespace fdet {

class Derivation;

/// The interval ]0,S[ and a finite sample grid inside it.
struct ScaleParams {
  double S = 0.5;
  std::vector<double> grid;

  /// `points` equally spaced radii S*i/(points+1), i = 1..points.
  static ScaleParams uniform(double S, std::size_t points);
  /// Throws DomainError unless 0 < s < S for all grid points, strictly increasing.
  void validate() const;
};

/// Certified upper bound: |u(x)|_s <= C sigma^{-k} |x|_{s+sigma}
/// for all s in ]0,tau[, sigma in ]0,tau-s].
struct NormEstimate {
  unsigned k = 0;
  double tau = 0;
  double C = 0;

  friend bool operator==(const NormEstimate&, const NormEstimate&) = default;
};

double majorant_norm(const Jet& f, double s);

/// Exact L^2 norm on the polydisc of polyradius s:
/// |z^alpha|^2 = pi^n prod s^{2 alpha_i + 2} / (alpha_i + 1).
double l2_norm(const Jet& f, double s);

/// The rational part of the squared L^2 weight of z^alpha, dropping the
/// common factor pi^n s^{2n}: s^{2|alpha|} / prod (alpha_i + 1).
Rational l2_weight(const Exponent& alpha, const Rational& s);

/// (k = 1, tau, C = sum_i |v_i|_tau).
NormEstimate derivation_norm_bound(const Derivation& v, double tau);

/// Composition bound: k = sum k_i, C = n^k prod C_i. Throws on mixed tau.
NormEstimate product_norm_bound(const std::vector<NormEstimate>& estimates);

/// Bound for u^n / n! when u is 1-bounded with constant C: (k = n, 3^n C^n).
NormEstimate factorial_power_bound(const NormEstimate& u, unsigned n);

/// JSON record {norm_kind, s, value, trunc}; kind is "majorant" or "l2".
nlohmann::json norm_report(const Jet& f, double s, const std::string& kind);

}  // namespace fdet
