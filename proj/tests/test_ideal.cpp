#include <doctest.h>

#include "fdet/errors.hpp"
#include "fdet/ideal.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/parse.hpp"
#include "fdet/serialize.hpp"
#include "support.hpp"

using namespace fdet;

namespace {

// dim O/(Jf + M^D) by dense elimination over all products m * d_i f of degree < D.
unsigned brute_quotient_dim(const Jet& f, unsigned D) {
  const std::size_t n = f.n_vars();
  const MonomialIndex mons(n, D - 1);
  std::vector<std::vector<QComplex>> rows;
  for (std::size_t i = 0; i < n; ++i) {
    const Jet d = jet_derive(f, i);
    for (const Exponent& m : mons.monomials()) {
      const Jet p = (Jet::monomial(n, f.trunc(), m) * d).mod_power(D);
      std::vector<QComplex> row(mons.size());
      for (const auto& [e, c] : p.terms()) row[mons.index(e)] = c;
      rows.push_back(std::move(row));
    }
  }
  return static_cast<unsigned>(mons.size() - test::dense_rank(rows));
}

// Milnor number by brute force: quotient dims stabilize once M^D c Jf.
std::optional<unsigned> brute_milnor(const Jet& f) {
  for (unsigned D = 1; D + 1 < f.trunc(); ++D)
    if (brute_quotient_dim(f, D) == brute_quotient_dim(f, D + 1) &&
        brute_quotient_dim(f, D + 1) == brute_quotient_dim(f, std::min(f.trunc() - 1, D + 3)))
      return brute_quotient_dim(f, D);
  return std::nullopt;
}

struct Germ {
  const char* text;
  unsigned mu;
};

const std::vector<Germ> kCorpus = {
    {"x^2", 1},         {"x^4", 3},           {"x^6", 5},           {"x^2+y^2", 1},        {"x^2+y^3", 2},
    {"x^2+y^5", 4},     {"x^2*y+y^3", 4},     {"x^2*y+y^4", 5},     {"x^3+y^4", 6},        {"x^3+x*y^3", 7},
    {"x^3+y^5", 8},     {"x^2+y^2+w^2", 1},   {"x^2+y^2+w^3", 2},   {"x^3+y^3+w^3", 8},    {"x*y+w^2", 1},
};

}  // namespace

TEST_CASE("Milnor number of Morse germs") {
  for (std::size_t n = 1; n <= 4; ++n) {
    Jet f(n, 6);
    for (std::size_t i = 0; i < n; ++i) f += jet_pow(Jet::variable(n, 6, i), 2);
    const MilnorAnalysis a = analyze_milnor(f);
    CHECK(a.milnor == 1u);
    CHECK(a.determinacy_exponent == 1u);
  }
}

TEST_CASE("Milnor number of z^{k+1} against brute force") {
  for (unsigned k = 1; k <= 10; ++k) {
    const Jet f = Jet::monomial(1, k + 4, {k + 1});
    CHECK(milnor_number(f) == k);
    CHECK(brute_milnor(f) == k);
    CHECK(determinacy_exponent(f) == k);
  }
}

TEST_CASE("ADE and corpus germs") {
  for (const Germ& g : kCorpus) {
    CAPTURE(g.text);
    const Jet f = parse_jet(g.text, 0, 12);
    const MilnorAnalysis a = analyze_milnor(f);
    REQUIRE(a.milnor);
    CHECK(*a.milnor == g.mu);
    CHECK(brute_milnor(f) == g.mu);
    CHECK(*a.determinacy_exponent <= *a.milnor);
    for (unsigned d = 1; d < a.quotient_dims.size(); ++d) CHECK(a.quotient_dims[d] == brute_quotient_dim(f, d));
  }
}

TEST_CASE("Nakayama certification agrees with brute force at higher truncation") {
  for (const Germ& g : kCorpus) {
    CAPTURE(g.text);
    const Jet low = parse_jet(g.text, 0, 10);
    const Jet high = parse_jet(g.text, 0, 16);
    const auto mu = milnor_number(low);
    REQUIRE(mu);
    CHECK(brute_quotient_dim(high, 15) == *mu);
  }
}

TEST_CASE("non-isolated and degenerate germs") {
  const MilnorAnalysis a = analyze_milnor(parse_jet("x^2", 2, 10));
  CHECK_FALSE(a.milnor);
  CHECK(a.verdict.find("inconclusive") == 0);
  CHECK_THROWS_AS(analyze_milnor(parse_jet("3", 1, 6)), DegenerateInput);
  // cusp seen at too small a truncation
  CHECK_FALSE(milnor_number(parse_jet("x^2+y^9", 2, 6)));
}

TEST_CASE("membership certificates reconstruct monomials") {
  for (const Germ& g : kCorpus) {
    CAPTURE(g.text);
    const Jet f = parse_jet(g.text, 0, 12);
    const IdealData J = jacobian_ideal(f);
    const auto det = determinacy_exponent(f);
    REQUIRE(det);
    const unsigned t = *det + 2;
    const auto recs = membership_certificate(J, *det, t, f.trunc());
    REQUIRE(recs);
    for (const MembershipRecord& r : *recs) {
      Jet sum(f.n_vars(), f.trunc());
      for (std::size_t j = 0; j < r.multipliers.size(); ++j) sum += r.multipliers[j] * J.generators()[j];
      CHECK(sum.mod_power(t) == Jet::monomial(f.n_vars(), f.trunc(), r.monomial));
    }
    const json js = to_json(*recs);
    CHECK(js.size() == recs->size());
  }
  const Jet cusp = parse_jet("x^3+y^4", 2, 10);
  CHECK_FALSE(membership_certificate(jacobian_ideal(cusp), 3, 5, 10));
}

TEST_CASE("mu + 2 consistency: M^{mu+2} c M^2 Jf + M^{trunc+1}") {
  for (const Germ& g : kCorpus) {
    CAPTURE(g.text);
    const unsigned T = 10;
    const Jet f = parse_jet(g.text, 0, T + 1);
    const std::size_t n = f.n_vars();
    const MonomialIndex mons(n, T);
    std::vector<Jet> gens;
    const auto [q0, q1] = mons.degree_range(2);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t q = q0; q < q1; ++q) gens.push_back(Jet::monomial(n, T + 1, mons[q]) * jet_derive(f, i));
    const IdealData M2J(gens, T);
    for (unsigned d = g.mu + 2; d <= T; ++d) {
      const auto [b, e] = mons.degree_range(d);
      for (std::size_t k = b; k < e; ++k) CHECK(M2J.contains_mod(Jet::monomial(n, T + 1, mons[k]), T + 1));
    }
  }
}

TEST_CASE("derivations preserving an ideal") {
  const unsigned N = 5;
  // Der(M) = M Der: coefficients without constant term
  const auto dm = derivations_preserving(IdealData::maximal(2, N), N);
  const MonomialIndex mons(2, N);
  CHECK(dm.size() == 2 * (mons.size() - 1));
  for (const Derivation& v : dm)
    for (const Jet& c : v.components()) CHECK(c.order() >= 1);

  // I = (x^2, y): v(x^2) = 2x v_x must be in I, v(y) = v_y in I
  const IdealData I({parse_jet("x^2", 2, N), parse_jet("y", 2, N)}, N);
  const auto di = derivations_preserving(I, N);
  for (const Derivation& v : di) {
    CHECK(I.contains_mod(apply(v, I.generators()[0]), N));
    CHECK(I.contains_mod(apply(v, I.generators()[1]), N));
  }
  // independent dimension count over coefficient monomials of degree < N: v_x in (x, y), v_y in (x^2, y)
  std::size_t expect = 0;
  for (const Exponent& e : mons.monomials()) {
    if (total_degree(e) >= N) {
      expect += 2;
      continue;
    }
    if (total_degree(e) >= 1) ++expect;
    if (e[1] >= 1 || e[0] >= 2) ++expect;
  }
  CHECK(di.size() == expect);
}

TEST_CASE("I(f) for the maximal ideal") {
  for (const char* text : {"z^2", "x^2+y^2"}) {
    CAPTURE(text);
    const Jet f = parse_jet(text, 0, 8);
    const IdealData If = if_module_image(f, IdealData::maximal(f.n_vars(), 8));
    CHECK(If.max_power_exponent() == 4u);
    const NuResult nu = nu_exponent(f, IdealData::maximal(f.n_vars(), 8));
    CHECK(nu.nu == 4u);
    CHECK(nu.certifying_power == 4u);
  }
}

TEST_CASE("I(f) matches a dense span oracle") {
  const unsigned N = 6;
  const Jet f = parse_jet("x^3+y^4", 2, N);
  const IdealData I({parse_jet("x", 2, N), parse_jet("y^2", 2, N)}, N);
  const IdealData If = if_module_image(f, I);
  // oracle: span of m2 * v(f), m2 degree-2 monomial, v monomial derivation with v(I) c I checked densely
  const MonomialIndex mons(2, N);
  std::vector<std::vector<QComplex>> rows;
  for (const Derivation& v : derivations_preserving(I, N)) {
    for (const auto& m : {Exponent{2, 0}, Exponent{1, 1}, Exponent{0, 2}}) {
      const Jet img = Jet::monomial(2, N, m) * apply(v, f);
      std::vector<QComplex> row(mons.size());
      for (const auto& [e, c] : img.terms()) row[mons.index(e)] = c;
      rows.push_back(std::move(row));
    }
  }
  const GradedSpan& sp = If.span_mod(N + 1);
  CHECK(sp.basis.rank() == test::dense_rank(rows));
}

TEST_CASE("ideal powers") {
  const unsigned N = 6;
  const IdealData M = IdealData::maximal(2, N);
  const IdealData M2 = ideal_power(M, 2, N);
  CHECK(M2.generators().size() == 3);
  CHECK(M2.max_power_exponent() == 2u);
  const PowerMembership a = ideal_power_contains(M, 2, parse_jet("x*y + y^3", 2, N));
  CHECK(a.member);
  CHECK(a.certified);
  CHECK_FALSE(ideal_power_contains(M, 2, parse_jet("x + y^3", 2, N)).member);
  CHECK(ideal_power_contains(M, 0, parse_jet("1", 2, N)).member);
  // principal ideal (x): no power of M inside, membership only modulo the truncation
  const IdealData X({parse_jet("x", 2, N)}, N);
  const PowerMembership b = ideal_power_contains(X, 2, parse_jet("x^2*y", 2, N));
  CHECK(b.member);
  CHECK_FALSE(b.certified);
}

TEST_CASE("degenerate ideals") {
  const IdealData zero({Jet(1, 6)}, 6);
  CHECK(zero.is_zero());
  CHECK_THROWS_AS(nu_exponent(parse_jet("z^2", 1, 6), zero), DegenerateInput);
  CHECK_THROWS_AS(IdealData({}, 3), DegenerateInput);
  CHECK_THROWS_AS(IdealData::maximal(1, 4).span_mod(6), DomainError);
}
