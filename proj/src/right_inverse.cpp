#include "fdet/right_inverse.hpp"

#include <algorithm>
#include <cmath>

#include "fdet/errors.hpp"

namespace fdet {

LieAlgebra jacobian_algebra(std::size_t n_vars, unsigned trunc) {
  LieAlgebra out{{}, true};
  const MonomialIndex mons(n_vars, trunc);
  const std::size_t begin = trunc >= 2 ? mons.degree_range(2).first : mons.size();
  for (std::size_t i = 0; i < n_vars; ++i)
    for (std::size_t a = begin; a < mons.size(); ++a)
      out.basis.push_back(Derivation::along(i, Jet::monomial(n_vars, trunc, mons[a])));
  return out;
}

LieAlgebra ideal_algebra(const IdealData& ideal, unsigned trunc) {
  LieAlgebra out{m2_derivations_preserving(ideal, trunc), false};
  return out;
}

namespace {

QComplex inner(const SparseVec& u, const SparseVec& v, const std::vector<Rational>& w) {
  QComplex acc;
  auto it = v.begin();
  for (const auto& [k, c] : u) {
    it = v.lower_bound(k);
    if (it == v.end()) break;
    if (it->first == k) acc += c * it->second.conj() * QComplex(w[k]);
  }
  return acc;
}

}  // namespace

RightInverse::RightInverse(const Jet& f, LieAlgebra algebra, const Rational& s)
    : f_(f),
      n_(f.n_vars()),
      trunc_(f.trunc()),
      radius_(s.get_d()),
      coeff_index_(f.n_vars(), f.trunc()),
      row_index_(f.n_vars(), f.trunc()) {
  if (s <= 0) throw DomainError("right inverse radius must be positive");
  const std::size_t block = coeff_index_.size();

  std::vector<Rational> weight(n_ * block);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t a = 0; a < block; ++a) weight[i * block + a] = l2_weight(coeff_index_[a], s);

  for (const Derivation& q : algebra.basis) {
    if (q.n_vars() != n_ || q.trunc() != trunc_) throw DimensionError("Lie algebra does not match f");
    SparseVec v;
    for (std::size_t i = 0; i < n_; ++i)
      for (const auto& [e, c] : q[i].terms()) v.emplace(i * block + coeff_index_.index(e), c);
    if (v.empty()) continue;
    basis_.push_back(std::move(v));
  }

  std::vector<Rational> d(basis_.size());
  if (!algebra.monomial) {
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      SparseVec q = basis_[k];
      for (std::size_t j = 0; j < k; ++j) {
        const QComplex h = inner(basis_[k], basis_[j], weight);
        if (!h.is_zero()) axpy(q, -(h / QComplex(d[j])), basis_[j]);
      }
      if (q.empty()) throw DegenerateInput("Lie algebra basis is linearly dependent");
      basis_[k] = std::move(q);
      d[k] = inner(basis_[k], basis_[k], weight).re();
    }
  } else {
    for (std::size_t k = 0; k < basis_.size(); ++k) d[k] = inner(basis_[k], basis_[k], weight).re();
  }

  // A_{., k}: the image q_k(f) in row coordinates.
  std::vector<Jet> partials;
  for (std::size_t i = 0; i < n_; ++i) partials.push_back(jet_derive(f_, i));
  std::vector<SparseVec> cols(basis_.size());
  std::map<std::size_t, SparseVec> by_row;  // transpose of A
  Exponent e(n_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    SparseVec& col = cols[k];
    for (const auto& [idx, c] : basis_[k]) {
      const std::size_t i = idx / block;
      const Exponent& beta = coeff_index_[idx % block];
      const unsigned db = total_degree(beta);
      for (const auto& [pe, pc] : partials[i].terms()) {
        if (db + total_degree(pe) > trunc_) break;
        for (std::size_t m = 0; m < n_; ++m) e[m] = beta[m] + pe[m];
        axpy(col, c * pc, SparseVec{{row_index_.index(e), QComplex(1)}});
      }
    }
    for (const auto& [r, a] : col) by_row[r].emplace(k, a.conj() / QComplex(d[k]));
  }

  for (auto& [r, p] : by_row) {
    SparseVec g;
    for (const auto& [k, c] : p) axpy(g, c, cols[k]);
    gram_.insert(g, rows_.size());
    rows_.push_back(std::move(p));
    row_ids_.push_back(r);
  }
}

RightInverseSolution RightInverse::solve(const Jet& b) const {
  if (b.n_vars() != n_ || b.trunc() != trunc_) throw DimensionError("right-hand side does not match f");
  const Reduction red = gram_.reduce(to_vector(b, row_index_));
  SparseVec c;
  for (const auto& [r, y] : red.combination) axpy(c, y, rows_[r]);
  SparseVec coeffs;
  for (const auto& [k, ck] : c) axpy(coeffs, ck, basis_[k]);

  const std::size_t block = coeff_index_.size();
  std::vector<Jet> comps(n_, Jet(n_, trunc_));
  for (const auto& [idx, v] : coeffs) comps[idx / block].add_term(coeff_index_[idx % block], v);
  Derivation u(std::move(comps));
  Jet residual = b - apply(u, f_);
  const bool ok = residual.is_zero();
  const NormEstimate est = derivation_norm_bound(u, radius_);
  return {std::move(u), std::move(residual), est, ok};
}

RightInverseSolution right_inverse(const Jet& f, const Jet& b, const Rational& s) {
  return RightInverse(f, jacobian_algebra(f.n_vars(), f.trunc()), s).solve(b);
}

double estimate_inverse_bound(const RightInverse& j, unsigned k, const ScaleParams& scale) {
  const Jet& f = j.f();
  const MonomialIndex mons(f.n_vars(), f.trunc());
  double best = 0;
  for (const Exponent& beta : mons.monomials()) {
    const Jet b = Jet::monomial(f.n_vars(), f.trunc(), beta);
    const RightInverseSolution sol = j.solve(b);
    if (!sol.ok || sol.u.is_zero()) continue;
    for (double s : scale.grid) {
      const double sigma = scale.S - s;
      if (sigma <= 0) continue;
      double un = 0;
      for (const Jet& a : sol.u.components()) un += majorant_norm(a, s);
      const double ratio = un * std::pow(sigma, k) / majorant_norm(b, s + sigma);
      best = std::max(best, ratio);
    }
  }
  return best;
}

}  // namespace fdet
