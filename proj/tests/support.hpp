#pragma once

// Shared helpers for the unit tests: seeded random jets and derivations with
// small rational coefficients, and a dense rank oracle.

#include <random>
#include <vector>

#include "fdet/jet.hpp"
#include "fdet/lie_exp.hpp"

namespace fdet::test {

inline constexpr std::uint64_t kSeed = 0x5eed2024ULL;

inline QComplex random_coeff(std::mt19937_64& rng, int range = 5, int den = 7, bool complex_part = true) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> d(1, den);
  Rational re(num(rng), d(rng));
  re.canonicalize();
  Rational im(complex_part ? num(rng) : 0, d(rng));
  im.canonicalize();
  return {re, im};
}

/// Random jet with terms of degree in [min_order, trunc], each present with probability `density`.
inline Jet random_jet(std::mt19937_64& rng, std::size_t n, unsigned trunc, unsigned min_order = 0,
                      double density = 0.5, bool complex_part = true) {
  Jet f(n, trunc);
  std::bernoulli_distribution keep(density);
  const MonomialIndex mons(n, trunc);
  for (const Exponent& e : mons.monomials())
    if (total_degree(e) >= min_order && keep(rng)) f.add_term(e, random_coeff(rng, 5, 7, complex_part));
  return f;
}

inline Derivation random_derivation(std::mt19937_64& rng, std::size_t n, unsigned trunc, unsigned min_order,
                                    double density = 0.5) {
  std::vector<Jet> comps;
  for (std::size_t i = 0; i < n; ++i) comps.push_back(random_jet(rng, n, trunc, min_order, density));
  return Derivation(std::move(comps));
}

/// Rank of a dense matrix over Q(i) by plain Gaussian elimination.
inline std::size_t dense_rank(std::vector<std::vector<QComplex>> a) {
  std::size_t rank = 0;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      const QComplex f = a[r][c] / a[rank][c];
      for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace fdet::test
