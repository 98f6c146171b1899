#pragma once

// Right inverse j of the infinitesimal action u -> u(f) on a Lie algebra of
// derivations with coefficients in M^2: the solution of u(f) = b that is
// minimal for the weighted L^2 norm of the coefficients at radius s.

#include <vector>

#include "fdet/ideal.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/scale_norm.hpp"

namespace fdet {

/// Finite basis of a space of derivations, linearly independent.
struct LieAlgebra {
  std::vector<Derivation> basis;
  /// Every basis element is a single monomial derivation z^beta d_i.
  bool monomial = false;
};

/// z^beta d_i for 2 <= |beta| <= trunc.
LieAlgebra jacobian_algebra(std::size_t n_vars, unsigned trunc);

/// M^2 Der(I), truncated at trunc.
LieAlgebra ideal_algebra(const IdealData& ideal, unsigned trunc);

struct RightInverseSolution {
  Derivation u;
  /// b - u(f); zero when b is in the image.
  Jet residual;
  NormEstimate norm_estimate;
  bool ok = false;
};

class RightInverse {
 public:
  RightInverse(const Jet& f, LieAlgebra algebra, const Rational& s = Rational(1, 2));

  RightInverseSolution solve(const Jet& b) const;

  const Jet& f() const { return f_; }
  double radius() const { return radius_; }
  /// Rank of u -> u(f) on the algebra.
  std::size_t rank() const { return gram_.rank(); }

 private:
  Jet f_;
  std::size_t n_;
  unsigned trunc_;
  double radius_;
  MonomialIndex coeff_index_;          // coefficient monomials of derivations
  MonomialIndex row_index_;            // monomials of the image
  std::vector<SparseVec> basis_;       // W-orthogonal, over i*|coeff| + alpha
  std::vector<SparseVec> rows_;        // rows_[r][k] = conj(A_{r,k}) / d_k
  std::vector<std::size_t> row_ids_;   // image monomial of rows_[r]
  EchelonBasis gram_;                  // columns A rows_[r], tagged r
};

/// j(b) on the full Jacobian algebra.
RightInverseSolution right_inverse(const Jet& f, const Jet& b, const Rational& s = Rational(1, 2));

/// Sampled estimate of N^k_S(j): max over monomial targets z^beta in the
/// image and the grid of |j(z^beta)|_s sigma^k / |z^beta|_{s+sigma}. An
/// estimate, not a certified bound.
double estimate_inverse_bound(const RightInverse& j, unsigned k, const ScaleParams& scale);

}  // namespace fdet
