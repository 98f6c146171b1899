#include "fdet/lie_exp.hpp"

#include <algorithm>
#include <cmath>

#include "fdet/errors.hpp"

namespace fdet {

Derivation::Derivation(std::vector<Jet> components) : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("derivation needs at least one component");
  for (const Jet& c : components_) {
    if (c.n_vars() != components_.size()) throw DimensionError("derivation component count differs from n_vars");
    if (c.trunc() != components_.front().trunc()) throw DimensionError("derivation components with different trunc");
  }
}

Derivation Derivation::zero(std::size_t n_vars, unsigned trunc) {
  return Derivation(std::vector<Jet>(n_vars, Jet(n_vars, trunc)));
}

Derivation Derivation::along(std::size_t i, const Jet& c) {
  Derivation v = zero(c.n_vars(), c.trunc());
  if (i >= c.n_vars()) throw DimensionError("derivation index out of range");
  v.components_[i] = c;
  return v;
}

unsigned Derivation::order() const {
  unsigned w = kInfiniteOrder;
  for (const Jet& c : components_) w = std::min(w, c.order());
  return w;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  if (o.n_vars() != n_vars()) throw DimensionError("derivations with different n_vars");
  for (std::size_t i = 0; i < components_.size(); ++i) components_[i] += o.components_[i];
  return *this;
}

Derivation operator*(const QComplex& c, const Derivation& v) {
  Derivation out = v;
  for (Jet& comp : out.components_) comp *= c;
  return out;
}

Derivation Derivation::operator-() const { return QComplex(-1) * *this; }

Jet apply(const Derivation& v, const Jet& f) {
  if (v.n_vars() != f.n_vars()) throw DimensionError("derivation and jet have different n_vars");
  if (v.trunc() != f.trunc()) throw DimensionError("derivation and jet have different trunc");
  Jet out(f.n_vars(), f.trunc());
  for (std::size_t i = 0; i < v.n_vars(); ++i) {
    if (v[i].is_zero()) continue;
    out += v[i] * jet_derive(f, i);
  }
  return out;
}

namespace {

void require_exact_order(const Derivation& v) {
  const unsigned w = v.order();
  if (w >= 2) return;
  if (w == 1 && diagonal_eigenvalues(v))
    throw DomainError("order-1 diagonal derivation has no exact exponential; use exponential_semisimple");
  if (w == 1) throw DomainError("exact exponential needs coefficient order >= 2 (got order 1)");
  throw DomainError("exact exponential needs coefficient order >= 2 (got order 0)");
}

}  // namespace

Jet exponential(const Derivation& v, const Jet& f) {
  if (v.is_zero()) return f;
  require_exact_order(v);
  Jet sum = f;
  Jet term = f;
  for (unsigned j = 1; !term.is_zero(); ++j) {
    term = apply(v, term) * QComplex(Rational(1, j));
    sum += term;
  }
  return sum;
}

JetMap exp_as_map(const Derivation& v) {
  std::vector<Jet> comps;
  for (std::size_t i = 0; i < v.n_vars(); ++i) comps.push_back(exponential(v, Jet::variable(v.n_vars(), v.trunc(), i)));
  return JetMap(std::move(comps));
}

JetMap exp_product(std::span<const Derivation> vs, std::size_t n_vars, unsigned trunc) {
  for (const Derivation& v : vs) {
    if (v.n_vars() != n_vars || v.trunc() != trunc) throw DimensionError("derivation does not match product dimensions");
    if (!v.is_zero()) require_exact_order(v);
  }
  std::vector<Jet> comps;
  for (std::size_t i = 0; i < n_vars; ++i) {
    Jet c = Jet::variable(n_vars, trunc, i);
    for (const Derivation& v : vs) c = exponential(v, c);
    comps.push_back(std::move(c));
  }
  return JetMap(std::move(comps));
}

std::optional<std::vector<QComplex>> diagonal_eigenvalues(const Derivation& v) {
  std::vector<QComplex> out;
  const std::size_t n = v.n_vars();
  for (std::size_t i = 0; i < n; ++i) {
    const Jet& c = v[i];
    Exponent e(n, 0);
    e[i] = 1;
    if (c.size() > 1) return std::nullopt;
    if (c.is_zero()) {
      out.emplace_back();
      continue;
    }
    if (c.terms().begin()->first != e) return std::nullopt;
    out.push_back(c.terms().begin()->second);
  }
  return out;
}

FloatJet exponential_semisimple(std::span<const std::complex<double>> eigenvalues, const Jet& f) {
  if (eigenvalues.size() != f.n_vars()) throw DimensionError("eigenvalue count differs from n_vars");
  FloatJet out;
  for (const auto& [e, c] : f.terms()) {
    std::complex<double> weight = 0;
    for (std::size_t i = 0; i < e.size(); ++i) weight += static_cast<double>(e[i]) * eigenvalues[i];
    out.emplace(e, c.to_complex() * std::exp(weight));
  }
  return out;
}

bool check_exp_criterion(const NormEstimate& estimate, double s) {
  if (estimate.k != 1) throw DomainError("exponential criterion needs a 1-bounded estimate");
  if (!(s > 0) || s > estimate.tau) throw DomainError("criterion radius must lie in ]0,tau]");
  return round_up(3.0 * estimate.C) < s;
}

ProductCriterion check_product_criterion(std::span<const NormEstimate> estimates, double s) {
  if (!(s > 0)) throw DomainError("criterion radius must be positive");
  ProductCriterion out;
  out.s = s;
  for (const NormEstimate& e : estimates) {
    if (e.k != 1) throw DomainError("product criterion needs 1-bounded estimates");
    if (s > e.tau) throw DomainError("criterion radius exceeds an estimate's tau");
    out.sum = round_up(out.sum + e.C);
  }
  const double three_sum = round_up(3.0 * out.sum);
  out.ok = three_sum < s;
  out.margin = s - three_sum;
  return out;
}

}  // namespace fdet
