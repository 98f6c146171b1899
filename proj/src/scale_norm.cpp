#include "fdet/scale_norm.hpp"

#include <cmath>
#include <numbers>

#include "fdet/errors.hpp"
#include "fdet/lie_exp.hpp"

namespace fdet {

namespace {

void check_radius(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw DomainError("radius must be positive and finite");
}

double pow_up(double s, unsigned k) {
  double r = 1.0;
  for (unsigned i = 0; i < k; ++i) r = round_up(r * s);
  return r;
}

}  // namespace

ScaleParams ScaleParams::uniform(double S, std::size_t points) {
  ScaleParams p;
  p.S = S;
  for (std::size_t i = 1; i <= points; ++i) p.grid.push_back(S * static_cast<double>(i) / static_cast<double>(points + 1));
  return p;
}

void ScaleParams::validate() const {
  if (!(S > 0)) throw DomainError("scale bound S must be positive");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0 && grid[i] < S)) throw DomainError("grid point outside ]0,S[");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be strictly increasing");
  }
}

double majorant_norm(const Jet& f, double s) {
  check_radius(s);
  double sum = 0.0;
  for (const auto& [e, c] : f.terms()) sum = round_up(sum + round_up(c.abs_upper() * pow_up(s, total_degree(e))));
  return sum;
}

double l2_norm(const Jet& f, double s) {
  check_radius(s);
  double sum = 0.0;
  for (const auto& [e, c] : f.terms()) {
    double w = 1.0;
    for (unsigned a : e) w = round_up(w * pow_up(s, 2 * a + 2) / static_cast<double>(a + 1));
    const double m = c.abs_upper();
    sum = round_up(sum + round_up(round_up(m * m) * w));
  }
  const double pi_n = pow_up(std::numbers::pi, static_cast<unsigned>(f.n_vars()));
  return round_up(std::sqrt(round_up(sum * pi_n)));
}

Rational l2_weight(const Exponent& alpha, const Rational& s) {
  Rational w(1);
  const Rational s2 = s * s;
  for (unsigned a : alpha) {
    for (unsigned k = 0; k < a; ++k) w *= s2;
    w /= Rational(a + 1);
  }
  return w;
}

NormEstimate derivation_norm_bound(const Derivation& v, double tau) {
  check_radius(tau);
  double C = 0.0;
  for (const Jet& comp : v.components()) C = round_up(C + majorant_norm(comp, tau));
  return {1, tau, C};
}

NormEstimate product_norm_bound(const std::vector<NormEstimate>& estimates) {
  if (estimates.empty()) throw DomainError("product of no estimates");
  if (estimates.size() == 1) return estimates.front();
  NormEstimate out{0, estimates.front().tau, 1.0};
  double prod = 1.0;
  for (const NormEstimate& e : estimates) {
    if (e.tau != out.tau) throw DimensionError("estimates at different tau");
    out.k += e.k;
    prod = round_up(prod * e.C);
  }
  out.C = round_up(pow_up(static_cast<double>(estimates.size()), out.k) * prod);
  return out;
}

NormEstimate factorial_power_bound(const NormEstimate& u, unsigned n) {
  if (u.k != 1) throw DomainError("factorial power bound needs a 1-bounded estimate");
  return {n, u.tau, round_up(pow_up(3.0, n) * pow_up(u.C, n))};
}

nlohmann::json norm_report(const Jet& f, double s, const std::string& kind) {
  double value = 0;
  if (kind == "majorant") value = majorant_norm(f, s);
  else if (kind == "l2") value = l2_norm(f, s);
  else throw DomainError("unknown norm kind '" + kind + "'");
  return {{"norm_kind", kind}, {"s", s}, {"value", value}, {"trunc", f.trunc()}};
}

}  // namespace fdet
