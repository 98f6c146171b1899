#include "fdet/ideal.hpp"

#include <algorithm>
#include <functional>

#include "fdet/errors.hpp"
#include "fdet/lie_exp.hpp"

namespace fdet {

SparseVec to_vector(const Jet& f, const MonomialIndex& index) {
  SparseVec v;
  for (const auto& [e, c] : f.terms()) {
    if (total_degree(e) > index.max_degree()) break;
    v.emplace(index.index(e), c);
  }
  return v;
}

Jet from_vector(const SparseVec& v, const MonomialIndex& index, unsigned trunc) {
  Jet out(index.n_vars(), trunc);
  for (const auto& [k, c] : v) out.add_term(index[k], c);
  return out;
}

IdealData::IdealData(std::vector<Jet> generators, unsigned valid_degree)
    : generators_(std::move(generators)), valid_degree_(valid_degree) {
  if (generators_.empty()) throw DegenerateInput("ideal without generators");
  n_vars_ = generators_.front().n_vars();
  for (const Jet& g : generators_) {
    if (g.n_vars() != n_vars_) throw DimensionError("ideal generators with different n_vars");
    if (g.trunc() < valid_degree) throw DomainError("generator truncated below the ideal's valid degree");
  }
}

IdealData IdealData::from_vector_space(std::vector<Jet> spanning, unsigned valid_degree) {
  IdealData out(std::move(spanning), valid_degree);
  out.spans_as_vector_space_ = true;
  return out;
}

IdealData IdealData::maximal(std::size_t n_vars, unsigned trunc) {
  std::vector<Jet> gens;
  for (std::size_t i = 0; i < n_vars; ++i) gens.push_back(Jet::variable(n_vars, trunc, i));
  return IdealData(std::move(gens), trunc);
}

bool IdealData::is_zero() const {
  return std::all_of(generators_.begin(), generators_.end(), [](const Jet& g) { return g.is_zero(); });
}

const GradedSpan& IdealData::span_mod(unsigned t) const {
  if (t == 0) throw DomainError("span modulo M^0 is trivial");
  if (t > valid_degree_ + 1) throw DomainError("span requested beyond the generators' valid degree");
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->spans[t];
  if (slot) return *slot;

  auto span = std::make_unique<GradedSpan>(GradedSpan{t, MonomialIndex(n_vars_, t - 1), {}, {}});
  const MonomialIndex& mons = span->monomials;
  const std::size_t n_mult = spans_as_vector_space_ ? 1 : mons.size();
  Exponent e(n_vars_);
  for (std::size_t j = 0; j < generators_.size(); ++j) {
    const Jet& g = generators_[j];
    if (g.order() >= t) continue;
    for (std::size_t m = 0; m < n_mult; ++m) {
      const Exponent& mult = mons[m];
      const unsigned dm = total_degree(mult);
      if (dm + g.order() >= t) break;  // multipliers are sorted by degree
      SparseVec col;
      for (const auto& [ge, c] : g.terms()) {
        if (total_degree(ge) + dm >= t) break;
        for (std::size_t k = 0; k < n_vars_; ++k) e[k] = ge[k] + mult[k];
        col.emplace(mons.index(e), c);
      }
      span->basis.insert(col, span->columns.size());
      span->columns.push_back({m, j});
    }
  }
  slot = std::move(span);
  return *slot;
}

bool IdealData::contains_mod(const Jet& p, unsigned t) const {
  if (t == 0) return true;
  const GradedSpan& sp = span_mod(t);
  return sp.basis.contains(to_vector(p.mod_power(t), sp.monomials));
}

bool IdealData::contains_max_power_graded(unsigned d) const {
  if (d > valid_degree_) throw DomainError("graded inclusion beyond the valid degree");
  const GradedSpan& sp = span_mod(d + 1);
  const auto [begin, end] = sp.monomials.degree_range(d);
  for (std::size_t k = begin; k < end; ++k)
    if (!sp.basis.contains(SparseVec{{k, QComplex(1)}})) return false;
  return true;
}

std::optional<unsigned> IdealData::max_power_exponent() const {
  for (unsigned d = 0; d <= valid_degree_; ++d)
    if (contains_max_power_graded(d)) return d;
  return std::nullopt;
}

IdealData jacobian_ideal(const Jet& f) {
  if (f.degree() == 0) throw DegenerateInput("Jacobian ideal of a constant germ");
  if (f.trunc() == 0) throw DomainError("Jacobian ideal needs trunc >= 1");
  std::vector<Jet> gens;
  for (std::size_t i = 0; i < f.n_vars(); ++i) gens.push_back(jet_derive(f, i));
  return IdealData(std::move(gens), f.trunc() - 1);
}

MilnorAnalysis analyze_milnor(const Jet& f) {
  const IdealData J = jacobian_ideal(f);
  MilnorAnalysis out;
  auto quotient_dim = [&](unsigned d) -> unsigned {
    if (d == 0) return 0;
    const GradedSpan& sp = J.span_mod(d);
    return static_cast<unsigned>(sp.monomials.size() - sp.basis.rank());
  };
  for (unsigned d = 0; d <= J.valid_degree(); ++d) {
    out.quotient_dims.push_back(quotient_dim(d));
    if (!J.contains_max_power_graded(d)) continue;
    const unsigned next = quotient_dim(d + 1);
    out.quotient_dims.push_back(next);
    if (next != out.quotient_dims[d]) throw Error("internal: quotient dimension changed after certified inclusion");
    out.determinacy_exponent = d;
    out.milnor = out.quotient_dims[d];
    out.verdict = "finite: M^" + std::to_string(d) + " c Jf + M^" + std::to_string(d + 1) + " (Nakayama)";
    return out;
  }
  out.verdict = "inconclusive: no d <= " + std::to_string(J.valid_degree()) +
                " with M^d c Jf + M^{d+1}; not finite at this truncation";
  return out;
}

std::optional<unsigned> milnor_number(const Jet& f) { return analyze_milnor(f).milnor; }

std::optional<unsigned> determinacy_exponent(const Jet& f) { return analyze_milnor(f).determinacy_exponent; }

std::optional<std::vector<MembershipRecord>> membership_certificate(const IdealData& ideal, unsigned d, unsigned t,
                                                                    unsigned trunc) {
  if (d >= t) throw DomainError("membership degree must be below the modulus power");
  const GradedSpan& sp = ideal.span_mod(t);
  std::vector<MembershipRecord> out;
  const auto [begin, end] = sp.monomials.degree_range(d);
  for (std::size_t k = begin; k < end; ++k) {
    Reduction r = sp.basis.reduce(SparseVec{{k, QComplex(1)}});
    if (!r.remainder.empty()) return std::nullopt;
    MembershipRecord rec{sp.monomials[k], std::vector<Jet>(ideal.generators().size(), Jet(ideal.n_vars(), trunc))};
    for (const auto& [tag, c] : r.combination) {
      const GradedSpan::Column& col = sp.columns[tag];
      rec.multipliers[col.generator].add_term(sp.monomials[col.multiplier], c);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

namespace {

Derivation monomial_derivation(std::size_t n, unsigned trunc, std::size_t i, const Exponent& alpha) {
  return Derivation::along(i, Jet::monomial(n, trunc, alpha));
}

SparseVec coefficient_vector(const Derivation& v, const MonomialIndex& mons) {
  SparseVec out;
  for (std::size_t i = 0; i < v.n_vars(); ++i)
    for (const auto& [e, c] : v[i].terms()) out.emplace(i * mons.size() + mons.index(e), c);
  return out;
}

}  // namespace

std::vector<Derivation> derivations_preserving(const IdealData& ideal, unsigned trunc) {
  const std::size_t n = ideal.n_vars();
  const unsigned t = std::min(ideal.valid_degree(), trunc);
  const MonomialIndex mons(n, trunc);
  std::vector<Derivation> out;
  if (t == 0) {
    for (std::size_t i = 0; i < n; ++i)
      for (const Exponent& a : mons.monomials()) out.push_back(monomial_derivation(n, trunc, i, a));
    return out;
  }
  const GradedSpan& sp = ideal.span_mod(t);
  const std::size_t block = sp.monomials.size();
  std::vector<Jet> partials;  // partials[j*n + i] = d_i g_j
  for (const Jet& g : ideal.generators())
    for (std::size_t i = 0; i < n; ++i) partials.push_back(jet_derive(g, i));

  EchelonBasis images;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < mons.size(); ++a) {
      const Exponent& alpha = mons[a];
      const std::size_t tag = i * mons.size() + a;
      if (total_degree(alpha) >= t) {
        out.push_back(monomial_derivation(n, trunc, i, alpha));
        continue;
      }
      // (z^alpha d_i)(g_j) modulo I + M^t, for every generator j
      SparseVec image;
      for (std::size_t j = 0; j < ideal.generators().size(); ++j) {
        SparseVec w;
        for (const auto& [e, c] : partials[j * n + i].terms()) {
          if (total_degree(e) + total_degree(alpha) >= t) break;
          Exponent s = e;
          for (std::size_t k = 0; k < n; ++k) s[k] += alpha[k];
          w.emplace(sp.monomials.index(s), c);
        }
        for (const auto& [k, c] : sp.basis.reduce(w).remainder) image.emplace(j * block + k, c);
      }
      if (auto relation = images.insert(image, tag)) {
        std::vector<Jet> comps(n, Jet(n, trunc));
        for (const auto& [rt, c] : *relation) comps[rt / mons.size()].add_term(mons[rt % mons.size()], c);
        out.emplace_back(std::move(comps));
      }
    }
  }
  return out;
}

std::vector<Derivation> m2_derivations_preserving(const IdealData& ideal, unsigned trunc) {
  const std::size_t n = ideal.n_vars();
  const MonomialIndex mons(n, trunc);
  const auto [q0, q1] = mons.degree_range(2);
  EchelonBasis seen;
  std::vector<Derivation> out;
  std::size_t tag = 0;
  for (const Derivation& v : derivations_preserving(ideal, trunc)) {
    for (std::size_t q = q0; q < q1; ++q) {
      const Jet m = Jet::monomial(n, trunc, mons[q]);
      std::vector<Jet> comps;
      for (const Jet& c : v.components()) comps.push_back(m * c);
      Derivation w(std::move(comps));
      if (w.is_zero()) continue;
      if (!seen.insert(coefficient_vector(w, mons), tag++)) out.push_back(std::move(w));
    }
  }
  return out;
}

IdealData if_module_image(const Jet& f, const IdealData& ideal) {
  if (f.n_vars() != ideal.n_vars()) throw DimensionError("germ and ideal have different n_vars");
  const unsigned valid = std::min(f.trunc(), ideal.valid_degree());
  std::vector<Jet> spanning;
  if (f.degree() > 0) {
    for (const Derivation& w : m2_derivations_preserving(ideal, f.trunc())) {
      Jet img = apply(w, f);
      if (!img.is_zero()) spanning.push_back(std::move(img));
    }
  }
  if (spanning.empty()) spanning.emplace_back(f.n_vars(), f.trunc());
  return IdealData::from_vector_space(std::move(spanning), valid);
}

IdealData ideal_power(const IdealData& ideal, unsigned nu, unsigned trunc) {
  const std::size_t n = ideal.n_vars();
  std::vector<Jet> gens;
  for (const Jet& g : ideal.generators()) {
    if (g.trunc() != trunc) throw DimensionError("ideal generators do not match trunc");
  }
  std::function<void(std::size_t, unsigned, Jet)> rec = [&](std::size_t from, unsigned depth, Jet acc) {
    if (depth == nu) {
      if (!acc.is_zero()) gens.push_back(std::move(acc));
      return;
    }
    for (std::size_t j = from; j < ideal.generators().size(); ++j) {
      rec(j, depth + 1, acc * ideal.generators()[j]);
    }
  };
  rec(0, 0, Jet::constant(n, trunc, 1));
  if (gens.empty()) gens.emplace_back(n, trunc);
  return IdealData(std::move(gens), ideal.valid_degree());
}

NuResult nu_exponent(const Jet& f, const IdealData& ideal) {
  if (ideal.is_zero()) throw DegenerateInput("zero ideal: I^nu c I(f) is vacuous");
  const IdealData image = if_module_image(f, ideal);
  NuResult out;
  if (image.is_zero()) {
    out.verdict = "inconclusive: I(f) is zero";
    return out;
  }
  out.certifying_power = image.max_power_exponent();
  if (!out.certifying_power) {
    out.verdict = "inconclusive: no M^c c I(f) certified up to degree " + std::to_string(image.valid_degree());
    return out;
  }
  const unsigned c = *out.certifying_power;
  for (unsigned nu = 1; nu <= f.trunc(); ++nu) {
    const IdealData power = ideal_power(ideal, nu, f.trunc());
    const bool all = std::all_of(power.generators().begin(), power.generators().end(),
                                 [&](const Jet& p) { return image.contains_mod(p, c); });
    if (all) {
      out.nu = nu;
      out.verdict = "I^" + std::to_string(nu) + " c I(f), certified through M^" + std::to_string(c) + " c I(f)";
      return out;
    }
  }
  out.verdict = "inconclusive: no nu <= " + std::to_string(f.trunc()) + " with I^nu c I(f)";
  return out;
}

PowerMembership ideal_power_contains(const IdealData& ideal, unsigned nu, const Jet& g) {
  if (nu == 0) return {true, true};
  const IdealData power = ideal_power(ideal, nu, g.trunc());
  if (auto c = power.max_power_exponent()) return {power.contains_mod(g, *c), true};
  return {power.contains_mod(g, power.valid_degree() + 1), false};
}

}  // namespace fdet
