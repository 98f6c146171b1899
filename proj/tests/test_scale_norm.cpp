#include <doctest.h>

#include <cmath>
#include <numbers>

#include <gmpxx.h>

#include "fdet/errors.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/parse.hpp"
#include "fdet/scale_norm.hpp"
#include "support.hpp"

using namespace fdet;

namespace {

// Midpoint rule in polar coordinates for the squared L^2 norm on the disc of radius s.
double l2_quadrature_1d(const Jet& f, double s) {
  const int nr = 400, nt = 256;
  double acc = 0;
  for (int a = 0; a < nr; ++a) {
    const double r = s * (a + 0.5) / nr;
    for (int b = 0; b < nt; ++b) {
      const double t = 2 * std::numbers::pi * (b + 0.5) / nt;
      const std::complex<double> z = std::polar(r, t);
      acc += std::norm(evaluate(f, std::span(&z, 1))) * r;
    }
  }
  return acc * (s / nr) * (2 * std::numbers::pi / nt);
}

double l1(const Derivation& v, double s) {
  double acc = 0;
  for (const Jet& c : v.components()) acc += majorant_norm(c, s);
  return acc;
}

}  // namespace

TEST_CASE("majorant norm") {
  const Jet f = parse_jet("1 + 2*z - 3*z^2", 1, 4);
  CHECK(majorant_norm(f, 0.5) == doctest::Approx(2.75));
  CHECK(majorant_norm(parse_jet("(3+4i)*z", 1, 4), 1.0) == doctest::Approx(5.0));
  CHECK(majorant_norm(Jet(2, 4), 0.3) == 0.0);
  CHECK_THROWS_AS(majorant_norm(f, 0.0), DomainError);
  CHECK_THROWS_AS(majorant_norm(f, -1.0), DomainError);
}

TEST_CASE("majorant norm dominates the sup norm on the polydisc") {
  std::mt19937_64 rng(test::kSeed + 10);
  std::uniform_real_distribution<double> ang(0, 2 * std::numbers::pi);
  for (int t = 0; t < 200; ++t) {
    const Jet f = test::random_jet(rng, 2, 5, 0, 0.5);
    const double s = 0.1 + 0.05 * (t % 10);
    const std::vector<std::complex<double>> pt{std::polar(s, ang(rng)), std::polar(s, ang(rng))};
    CHECK(std::abs(evaluate(f, pt)) <= majorant_norm(f, s) * (1 + 1e-12));
  }
}

TEST_CASE("L2 norm matches quadrature") {
  const Jet f = parse_jet("1 - z + (1+2i)*z^3", 1, 4);
  const double s = 0.7;
  const double exact = l2_norm(f, s);
  CHECK(exact * exact == doctest::Approx(l2_quadrature_1d(f, s)).epsilon(1e-4));
  // |z|^2 on the disc of radius s: pi s^4 / 2
  CHECK(std::pow(l2_norm(parse_jet("z", 1, 2), s), 2) == doctest::Approx(std::numbers::pi * std::pow(s, 4) / 2));
  CHECK(l2_weight({1, 2}, Rational(1, 2)) == Rational(1, 64 * 2 * 3));
}

TEST_CASE("Stirling-type inequality n^n <= 3^n n! for n <= 64") {
  for (unsigned n = 0; n <= 64; ++n) {
    mpz_class lhs, three, fact;
    mpz_ui_pow_ui(lhs.get_mpz_t(), n, n);
    mpz_ui_pow_ui(three.get_mpz_t(), 3, n);
    mpz_fac_ui(fact.get_mpz_t(), n);
    CHECK(lhs <= three * fact);
  }
}

TEST_CASE("submultiplicativity") {
  std::mt19937_64 rng(test::kSeed + 11);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 3;
    const Jet a = test::random_jet(rng, n, 5, 0, 0.4);
    const Jet b = test::random_jet(rng, n, 5, 0, 0.4);
    const double s = 0.05 * (1 + t % 10);
    CHECK(majorant_norm(a * b, s) <= majorant_norm(a, s) * majorant_norm(b, s) * (1 + 1e-12));
  }
}

TEST_CASE("Cauchy estimate on a 10-point grid") {
  std::mt19937_64 rng(test::kSeed + 12);
  const ScaleParams grid = ScaleParams::uniform(0.5, 10);
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 3;
    const Jet f = test::random_jet(rng, n, 7, 0, 0.4);
    const double s = grid.grid[t % 10];
    const double sigma = (grid.S - s) * (1 + t % 3) / 3.0;
    const double lhs = majorant_norm(jet_derive(f, t % n), s);
    if (lhs > majorant_norm(f, s + sigma) / sigma) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("derivation and product bounds hold by sampling") {
  std::mt19937_64 rng(test::kSeed + 13);
  const ScaleParams grid = ScaleParams::uniform(0.5, 10);
  const double tau = grid.S;
  int violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 2;
    const unsigned N = 6;
    const Derivation u1 = test::random_derivation(rng, n, N, 1, 0.3);
    const Derivation u2 = test::random_derivation(rng, n, N, 1, 0.3);
    const Jet x = test::random_jet(rng, n, N, 0, 0.5);
    const NormEstimate e1 = derivation_norm_bound(u1, tau);
    const NormEstimate e2 = derivation_norm_bound(u2, tau);
    const NormEstimate e12 = product_norm_bound({e1, e2});
    CHECK(e12.k == 2);
    for (double s : grid.grid) {
      const double sigma = tau - s;
      if (majorant_norm(apply(u1, x), s) > e1.C / sigma * majorant_norm(x, s + sigma)) ++violations;
      const double lhs = majorant_norm(apply(u1, apply(u2, x)), s);
      if (lhs > e12.C / (sigma * sigma) * majorant_norm(x, s + sigma)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("estimate algebra") {
  const NormEstimate u{1, 0.5, 0.1};
  CHECK(product_norm_bound({u}) == u);
  const NormEstimate p = product_norm_bound({u, u, u});
  CHECK(p.k == 3);
  CHECK(p.C == doctest::Approx(27 * 0.001));
  CHECK_THROWS_AS(product_norm_bound({u, NormEstimate{1, 0.4, 0.1}}), DimensionError);
  CHECK_THROWS_AS(product_norm_bound({}), DomainError);
  const NormEstimate f3 = factorial_power_bound(u, 3);
  CHECK(f3.k == 3);
  CHECK(f3.C == doctest::Approx(27 * 0.001));
  CHECK(derivation_norm_bound(Derivation::zero(2, 4), 0.5).C == 0.0);
}

TEST_CASE("u^n / n! is bounded by 3^n C^n sigma^-n") {
  std::mt19937_64 rng(test::kSeed + 14);
  const double tau = 0.5;
  int violations = 0;
  for (int t = 0; t < 300; ++t) {
    const Derivation u = test::random_derivation(rng, 1 + t % 2, 8, 2, 0.3);
    const Jet x = test::random_jet(rng, 1 + t % 2, 8, 0, 0.5);
    const NormEstimate e = derivation_norm_bound(u, tau);
    Jet p = x;
    double fact = 1;
    for (unsigned k = 1; k <= 4; ++k) {
      p = apply(u, p);
      fact *= k;
      const NormEstimate b = factorial_power_bound(e, k);
      for (double s : {0.1, 0.25, 0.4}) {
        const double sigma = tau - s;
        if (majorant_norm(p, s) / fact > b.C * std::pow(sigma, -static_cast<double>(k)) * majorant_norm(x, tau)) ++violations;
      }
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("scale parameters") {
  const ScaleParams p = ScaleParams::uniform(0.5, 4);
  REQUIRE(p.grid.size() == 4);
  CHECK(p.grid[0] == doctest::Approx(0.1));
  CHECK_NOTHROW(p.validate());
  ScaleParams bad{0.5, {0.1, 0.6}};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  ScaleParams unordered{0.5, {0.3, 0.2}};
  CHECK_THROWS_AS(unordered.validate(), DomainError);
}

TEST_CASE("norm report") {
  const auto j = norm_report(parse_jet("z^2", 1, 6), 0.5, "majorant");
  CHECK(j["norm_kind"] == "majorant");
  CHECK(j["trunc"] == 6);
  CHECK(j["value"].get<double>() == doctest::Approx(0.25));
  CHECK_THROWS(norm_report(parse_jet("z^2", 1, 6), 0.5, "sup"));
}
