#include <doctest.h>

#include <cmath>

#include "fdet/errors.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/parse.hpp"
#include "fdet/scale_norm.hpp"
#include "support.hpp"

using namespace fdet;

namespace {

Derivation d1(const char* a, unsigned N) { return Derivation::along(0, parse_jet(a, 1, N)); }

}  // namespace

TEST_CASE("apply is a derivation") {
  std::mt19937_64 rng(test::kSeed + 20);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 3;
    const Derivation v = test::random_derivation(rng, n, 6, 1, 0.3);
    const Jet a = test::random_jet(rng, n, 6, 0, 0.4);
    const Jet b = test::random_jet(rng, n, 6, 0, 0.4);
    CHECK(apply(v, a * b) == apply(v, a) * b + a * apply(v, b));
    CHECK(apply(v, a + b) == apply(v, a) + apply(v, b));
  }
}

TEST_CASE("flow of z^2 d_z at time 1 is z / (1 - z)") {
  const unsigned N = 10;
  const Jet img = exponential(d1("z^2", N), parse_jet("z", 1, N));
  Jet expect(1, N);
  for (unsigned k = 1; k <= N; ++k) expect.add_term({k}, 1);
  CHECK(img == expect);
}

TEST_CASE("exponential is an automorphism and matches composition") {
  std::mt19937_64 rng(test::kSeed + 21);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + t % 3;
    const unsigned N = 5 + t % 3;
    const Derivation v = test::random_derivation(rng, n, N, 2, 0.3);
    const Jet a = test::random_jet(rng, n, N, 0, 0.4);
    const Jet b = test::random_jet(rng, n, N, 0, 0.4);
    CHECK(exponential(v, a * b) == exponential(v, a) * exponential(v, b));
    CHECK(exponential(v, a) == jet_compose(a, exp_as_map(v)));
    CHECK(compose_maps(exp_as_map(v), exp_as_map(-v)) == JetMap::identity(n, N));
  }
}

TEST_CASE("exp_product orders its factors") {
  const unsigned N = 8;
  const Derivation u = d1("z^2", N);
  const Derivation w = d1("z^3", N);
  const std::vector<Derivation> vs{u, w};
  const JetMap prod = exp_product(vs, 1, N);
  // e^{w} e^{u} z: apply e^{u} first, then e^{w} to the result
  CHECK(prod[0] == exponential(w, exponential(u, parse_jet("z", 1, N))));
  CHECK_FALSE(prod[0] == exponential(u, exponential(w, parse_jet("z", 1, N))));
  CHECK(exp_product({}, 2, 4) == JetMap::identity(2, 4));
}

TEST_CASE("order requirements") {
  const unsigned N = 6;
  CHECK(exponential(Derivation::zero(1, N), parse_jet("z", 1, N)) == parse_jet("z", 1, N));
  CHECK_THROWS_AS(exponential(d1("z", N), parse_jet("z", 1, N)), DomainError);
  CHECK_THROWS_AS(exponential(d1("1", N), parse_jet("z", 1, N)), DomainError);
  CHECK_THROWS_AS(exponential(d1("z + z^2", N), parse_jet("z", 1, N)), DomainError);
  try {
    exponential(d1("2*z", N), parse_jet("z", 1, N));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("exponential_semisimple") != std::string::npos);
  }
}

TEST_CASE("semisimple closed forms") {
  const unsigned N = 4;
  const double lambda = 0.7;
  const std::vector<std::complex<double>> ev{lambda};
  const FloatJet a = exponential_semisimple(ev, parse_jet("z", 1, N));
  CHECK(std::abs(a.at({1}) - std::exp(lambda)) / std::exp(lambda) <= 1e-12);

  const auto eig = diagonal_eigenvalues(d1("-1/2*z", N));
  REQUIRE(eig);
  const std::vector<std::complex<double>> ev2{(*eig)[0].to_complex()};
  const FloatJet b = exponential_semisimple(ev2, parse_jet("z^2", 1, N));
  CHECK(std::abs(b.at({2}) - std::exp(-1.0)) / std::exp(-1.0) <= 1e-12);

  CHECK_FALSE(diagonal_eigenvalues(d1("z + z^2", N)));
  CHECK_FALSE(diagonal_eigenvalues(Derivation::along(0, parse_jet("z2", 2, N))));
}

TEST_CASE("convergence criteria") {
  CHECK(check_exp_criterion({1, 0.5, 0.01}, 0.1));
  CHECK_FALSE(check_exp_criterion({1, 0.5, 0.05}, 0.1));
  CHECK_THROWS_AS(check_exp_criterion({2, 0.5, 0.01}, 0.1), DomainError);
  CHECK_THROWS_AS(check_exp_criterion({1, 0.5, 0.01}, 0.6), DomainError);

  const std::vector<NormEstimate> es{{1, 0.5, 0.01}, {1, 0.5, 0.02}};
  const ProductCriterion c = check_product_criterion(es, 0.1);
  CHECK(c.ok);
  CHECK(c.sum == doctest::Approx(0.03));
  CHECK(c.margin == doctest::Approx(0.01));
  CHECK_FALSE(check_product_criterion(es, 0.09).ok);
  CHECK(check_product_criterion({}, 0.1).ok);
}

TEST_CASE("exponential series converges in the majorant norm when 3C < s") {
  std::mt19937_64 rng(test::kSeed + 22);
  const double tau = 0.5;
  int violations = 0;
  for (int t = 0; t < 200; ++t) {
    Derivation v = test::random_derivation(rng, 1 + t % 2, 8, 2, 0.3);
    NormEstimate e = derivation_norm_bound(v, tau);
    if (e.C == 0) continue;
    const double s = 0.4;
    const QComplex shrink(Rational(1, 1 + static_cast<long>(std::ceil(40 * e.C / s))));
    v = shrink * v;
    e = derivation_norm_bound(v, tau);
    if (!check_exp_criterion(e, s)) continue;
    const Jet x = test::random_jet(rng, v.n_vars(), 8, 0, 0.5);
    // |e^v x - x|_{s'} <= sum_k (3C/(tau - s'))^k |x|_tau
    const double sp = 0.2;
    const double q = 3 * e.C / (tau - sp);
    const double bound = q / (1 - q) * majorant_norm(x, tau);
    if (majorant_norm(exponential(v, x) - x, sp) > bound) ++violations;
  }
  CHECK(violations == 0);
}
