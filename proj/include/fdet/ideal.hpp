#pragma once

// Ideals of the local ring O_n represented by generator jets, with
// degree-graded Macaulay spans used for membership tests.
//
// Membership in the local ring is decided through the graded criterion
// M^d c I + M^{d+1}, which by Nakayama's lemma is equivalent to M^d c I.
// All spans are computed modulo M^t in the monomial coordinates of degree < t,
// where t never exceeds valid_degree + 1 (the generators are only known up
// to valid_degree).

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fdet/jet.hpp"
#include "fdet/linalg.hpp"

namespace fdet {

class Derivation;

SparseVec to_vector(const Jet& f, const MonomialIndex& index);
Jet from_vector(const SparseVec& v, const MonomialIndex& index, unsigned trunc);

/// Span of (I + M^t)/M^t. Tag k of `basis` is the product columns[k].
struct GradedSpan {
  struct Column {
    std::size_t multiplier;  // index into `monomials`
    std::size_t generator;
  };
  unsigned t;
  MonomialIndex monomials;  // degrees < t
  EchelonBasis basis;
  std::vector<Column> columns;
};

class IdealData {
 public:
  /// Ideal generated by `generators`, each known exactly up to valid_degree.
  IdealData(std::vector<Jet> generators, unsigned valid_degree);

  /// The generators already span the ideal as a vector space (modulo the
  /// truncation), so no monomial multipliers are needed.
  static IdealData from_vector_space(std::vector<Jet> spanning, unsigned valid_degree);

  /// The maximal ideal (z_1, ..., z_n).
  static IdealData maximal(std::size_t n_vars, unsigned trunc);

  const std::vector<Jet>& generators() const { return generators_; }
  std::size_t n_vars() const { return n_vars_; }
  unsigned valid_degree() const { return valid_degree_; }
  bool is_zero() const;

  /// Cached; t must satisfy t <= valid_degree + 1.
  const GradedSpan& span_mod(unsigned t) const;

  /// p in I + M^t.
  bool contains_mod(const Jet& p, unsigned t) const;

  /// The graded inclusion M^d c I + M^{d+1}; requires d <= valid_degree.
  bool contains_max_power_graded(unsigned d) const;

  /// Smallest d <= valid_degree with M^d c I (certified), if any.
  std::optional<unsigned> max_power_exponent() const;

 private:
  std::vector<Jet> generators_;
  std::size_t n_vars_;
  unsigned valid_degree_;
  bool spans_as_vector_space_ = false;

  struct Cache {
    std::mutex mutex;
    std::map<unsigned, std::unique_ptr<GradedSpan>> spans;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Jf = (d_1 f, ..., d_n f), valid to degree trunc-1. Throws DegenerateInput for constant f.
IdealData jacobian_ideal(const Jet& f);

struct MilnorAnalysis {
  /// Smallest mu with M^mu c Jf, when certified within the truncation.
  std::optional<unsigned> determinacy_exponent;
  /// dim O/Jf, when finite and certified.
  std::optional<unsigned> milnor;
  /// dim O/(Jf + M^d) for d = 0, 1, ... as far as computed.
  std::vector<unsigned> quotient_dims;
  std::string verdict;
};

MilnorAnalysis analyze_milnor(const Jet& f);
std::optional<unsigned> milnor_number(const Jet& f);
std::optional<unsigned> determinacy_exponent(const Jet& f);

/// z^beta = sum_j multipliers[j] * g_j modulo M^t.
struct MembershipRecord {
  Exponent monomial;
  std::vector<Jet> multipliers;
};

/// Representations of every degree-d monomial modulo M^t, or nothing if some
/// monomial is not in I + M^t.
std::optional<std::vector<MembershipRecord>> membership_certificate(const IdealData& ideal, unsigned d, unsigned t,
                                                                    unsigned trunc);

/// Basis of the derivations v with polynomial coefficients of degree <= trunc
/// and v(g_j) in I for every generator (checked modulo M^{valid_degree}).
std::vector<Derivation> derivations_preserving(const IdealData& ideal, unsigned trunc);

/// Basis of M^2 * Der(I) truncated at trunc.
std::vector<Derivation> m2_derivations_preserving(const IdealData& ideal, unsigned trunc);

/// I(f): the image of M^2 (x) Der(I) -> O, a (x) v -> a v(f).
IdealData if_module_image(const Jet& f, const IdealData& ideal);

struct NuResult {
  std::optional<unsigned> nu;
  /// Exponent c with M^c c I(f) used for the finite check.
  std::optional<unsigned> certifying_power;
  std::string verdict;
};

/// Smallest nu <= trunc with I^nu c I(f). Throws DegenerateInput for the zero ideal.
NuResult nu_exponent(const Jet& f, const IdealData& ideal);

/// Generators of I^nu (all products of nu generators).
IdealData ideal_power(const IdealData& ideal, unsigned nu, unsigned trunc);

struct PowerMembership {
  bool member = false;
  /// True when the decision holds in the local ring (some M^c c I^nu was
  /// certified); false when it only holds modulo M^{valid_degree+1}.
  bool certified = false;
};

PowerMembership ideal_power_contains(const IdealData& ideal, unsigned nu, const Jet& g);

}  // namespace fdet
