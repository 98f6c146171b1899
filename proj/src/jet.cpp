#include "fdet/jet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fdet/errors.hpp"

namespace fdet {

unsigned total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Jet::Jet(std::size_t n_vars, unsigned trunc) : n_vars_(n_vars), trunc_(trunc) {
  if (n_vars == 0) throw DimensionError("jet needs at least one variable");
}

Jet Jet::constant(std::size_t n_vars, unsigned trunc, const QComplex& c) {
  Jet j(n_vars, trunc);
  j.add_term(Exponent(n_vars, 0), c);
  return j;
}

Jet Jet::variable(std::size_t n_vars, unsigned trunc, std::size_t i) {
  if (i >= n_vars) throw DimensionError("variable index out of range");
  Exponent e(n_vars, 0);
  e[i] = 1;
  return monomial(n_vars, trunc, std::move(e));
}

Jet Jet::monomial(std::size_t n_vars, unsigned trunc, Exponent e, const QComplex& c) {
  if (e.size() != n_vars) throw DimensionError("exponent length differs from n_vars");
  Jet j(n_vars, trunc);
  j.add_term(e, c);
  return j;
}

QComplex Jet::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? QComplex{} : it->second;
}

void Jet::add_term(const Exponent& e, const QComplex& c) {
  if (e.size() != n_vars_) throw DimensionError("exponent length differs from n_vars");
  if (c.is_zero() || total_degree(e) > trunc_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned Jet::order() const {
  return terms_.empty() ? kInfiniteOrder : total_degree(terms_.begin()->first);
}

unsigned Jet::degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

Jet Jet::homogeneous_part(unsigned d) const {
  Jet out(n_vars_, trunc_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Jet Jet::mod_power(unsigned d) const {
  Jet out(n_vars_, trunc_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) >= d) break;
    out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

void Jet::check_compatible(const Jet& o) const {
  if (n_vars_ != o.n_vars_) throw DimensionError("jets with different n_vars");
  if (trunc_ != o.trunc_) throw DimensionError("jets with different trunc");
}

Jet& Jet::operator+=(const Jet& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Jet& Jet::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_compatible(b);
  Jet out(a.n_vars_, a.trunc_);
  Exponent e(a.n_vars_);
  for (const auto& [ea, ca] : a.terms_) {
    const unsigned da = total_degree(ea);
    for (const auto& [eb, cb] : b.terms_) {
      // terms are sorted by degree, so the rest of b is too high as well
      if (da + total_degree(eb) > a.trunc_) break;
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Jet& a, const Jet& b) {
  return a.n_vars_ == b.n_vars_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
}

Jet jet_add(const Jet& f, const Jet& g) { return f + g; }
Jet jet_mul(const Jet& f, const Jet& g) { return f * g; }
Jet jet_scale(const Jet& f, const QComplex& c) { return f * c; }

Jet jet_pow(const Jet& f, unsigned k) {
  Jet result = Jet::constant(f.n_vars(), f.trunc(), 1);
  Jet base = f;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

Jet jet_derive(const Jet& f, std::size_t i) {
  if (i >= f.n_vars()) throw DimensionError("derivative index out of range");
  Jet out(f.n_vars(), f.trunc());
  for (const auto& [e, c] : f.terms()) {
    if (e[i] == 0) continue;
    Exponent d = e;
    d[i] -= 1;
    out.add_term(d, c * QComplex(static_cast<long>(e[i])));
  }
  return out;
}

JetMap::JetMap(std::vector<Jet> components) : components_(std::move(components)) {
  if (components_.empty()) throw DimensionError("empty jet map");
  const std::size_t n = components_.size();
  for (const Jet& c : components_) {
    if (c.n_vars() != n) throw DimensionError("map component count differs from n_vars");
    if (c.trunc() != components_.front().trunc()) throw DimensionError("map components with different trunc");
  }
}

JetMap JetMap::identity(std::size_t n_vars, unsigned trunc) {
  std::vector<Jet> comps;
  for (std::size_t i = 0; i < n_vars; ++i) comps.push_back(Jet::variable(n_vars, trunc, i));
  return JetMap(std::move(comps));
}

Jet jet_compose(const Jet& f, const JetMap& phi) {
  if (phi.n_vars() != f.n_vars()) throw DimensionError("map and jet have different n_vars");
  if (phi.trunc() != f.trunc()) throw DimensionError("map and jet have different trunc");
  const std::size_t n = f.n_vars();
  for (const Jet& c : phi.components())
    if (!c.coeff(Exponent(n, 0)).is_zero())
      throw DomainError("composition with a map that has a nonzero constant term");

  // powers[i][k] = phi_i^k
  std::vector<std::vector<Jet>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned max_exp = 0;
    for (const auto& [e, c] : f.terms()) max_exp = std::max(max_exp, e[i]);
    powers[i].push_back(Jet::constant(n, f.trunc(), 1));
    for (unsigned k = 1; k <= max_exp; ++k) powers[i].push_back(powers[i].back() * phi[i]);
  }
  Jet out(n, f.trunc());
  for (const auto& [e, c] : f.terms()) {
    Jet term = Jet::constant(n, f.trunc(), c);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] > 0) term = term * powers[i][e[i]];
    out += term;
  }
  return out;
}

JetMap compose_maps(const JetMap& outer, const JetMap& inner) {
  std::vector<Jet> comps;
  for (const Jet& c : outer.components()) comps.push_back(jet_compose(c, inner));
  return JetMap(std::move(comps));
}

std::complex<double> evaluate(const Jet& f, std::span<const std::complex<double>> point) {
  if (point.size() != f.n_vars()) throw DimensionError("evaluation point has wrong dimension");
  std::complex<double> sum = 0;
  for (const auto& [e, c] : f.terms()) {
    std::complex<double> t = c.to_complex();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string to_string(const Jet& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    const bool unit = (c == QComplex(1));
    if (!first) os << " + ";
    first = false;
    const bool constant = total_degree(e) == 0;
    if (constant || !unit) {
      if (c.is_real()) os << c.re().get_str();
      else os << '(' << c.str() << ')';
    }
    bool need_star = !constant && !unit;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (need_star) os << '*';
      need_star = true;
      os << 'z' << (i + 1);
      if (e[i] > 1) os << '^' << e[i];
    }
  }
  return os.str();
}

namespace {

void enumerate_degree(std::size_t n, unsigned d, std::size_t pos, Exponent& cur,
                      std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned k = d + 1; k-- > 0;) {
    cur[pos] = k;
    enumerate_degree(n, d - k, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

MonomialIndex::MonomialIndex(std::size_t n_vars, unsigned max_degree)
    : n_vars_(n_vars), max_degree_(max_degree) {
  Exponent cur(n_vars, 0);
  for (unsigned d = 0; d <= max_degree; ++d) {
    degree_start_.push_back(monomials_.size());
    enumerate_degree(n_vars, d, 0, cur, monomials_);
  }
  degree_start_.push_back(monomials_.size());
  for (std::size_t k = 0; k < monomials_.size(); ++k) lookup_.emplace(monomials_[k], k);
}

std::size_t MonomialIndex::index(const Exponent& e) const {
  auto it = lookup_.find(e);
  return it == lookup_.end() ? monomials_.size() : it->second;
}

std::pair<std::size_t, std::size_t> MonomialIndex::degree_range(unsigned d) const {
  if (d > max_degree_) return {monomials_.size(), monomials_.size()};
  return {degree_start_[d], degree_start_[d + 1]};
}

}  // namespace fdet
