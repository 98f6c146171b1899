#include "fdet/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "fdet/detail/expr_parser.hpp"
#include "fdet/errors.hpp"

namespace fdet {

FourierJet::FourierJet(unsigned trunc_r, unsigned band) : trunc_r_(trunc_r), band_(band) {}

FourierJet FourierJet::monomial(unsigned trunc_r, unsigned band, unsigned m, int n, const QComplex& c) {
  FourierJet out(trunc_r, band);
  out.add_term(m, n, c);
  return out;
}

FourierJet FourierJet::constant(unsigned trunc_r, unsigned band, const QComplex& c) {
  return monomial(trunc_r, band, 0, 0, c);
}

QComplex FourierJet::coeff(unsigned m, int n) const {
  auto it = terms_.find({m, n});
  return it == terms_.end() ? QComplex{} : it->second;
}

void FourierJet::add_term(unsigned m, int n, const QComplex& c) {
  if (m > trunc_r_ || c.is_zero()) return;
  if (static_cast<unsigned>(std::abs(n)) > band_)
    throw BandOverflow("frequency " + std::to_string(n) + " exceeds band " + std::to_string(band_) +
                       "; use a larger band");
  auto [it, inserted] = terms_.try_emplace({m, n}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

unsigned FourierJet::order_r() const {
  if (terms_.empty()) return std::numeric_limits<unsigned>::max();
  return terms_.begin()->first.first;
}

unsigned FourierJet::max_frequency() const {
  unsigned out = 0;
  for (const auto& [key, c] : terms_) out = std::max(out, static_cast<unsigned>(std::abs(key.second)));
  return out;
}

FourierJet FourierJet::with_band(unsigned band) const {
  FourierJet out(trunc_r_, band);
  for (const auto& [key, c] : terms_) out.add_term(key.first, key.second, c);
  return out;
}

void FourierJet::check_compatible(const FourierJet& o) const {
  if (trunc_r_ != o.trunc_r_ || band_ != o.band_) throw DimensionError("Fourier jets with different bounds");
}

FourierJet& FourierJet::operator+=(const FourierJet& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

FourierJet& FourierJet::operator-=(const FourierJet& o) {
  check_compatible(o);
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

FourierJet& FourierJet::operator*=(const QComplex& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, v] : terms_) v *= c;
  return *this;
}

FourierJet operator*(const FourierJet& a, const FourierJet& b) {
  a.check_compatible(b);
  FourierJet out(a.trunc_r_, a.band_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      if (ka.first + kb.first > a.trunc_r_) break;
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    }
  }
  return out;
}

FourierJet FourierJet::operator-() const {
  FourierJet out = *this;
  for (auto& [key, v] : out.terms_) v = -v;
  return out;
}

bool operator==(const FourierJet& a, const FourierJet& b) {
  return a.trunc_r_ == b.trunc_r_ && a.band_ == b.band_ && a.terms_ == b.terms_;
}

FourierJet fj_derive_r(const FourierJet& f) {
  FourierJet out(f.trunc_r(), f.band());
  for (const auto& [key, c] : f.terms())
    if (key.first > 0) out.add_term(key.first - 1, key.second, c * QComplex(static_cast<long>(key.first)));
  return out;
}

FourierJet fj_derive_theta(const FourierJet& f) {
  FourierJet out(f.trunc_r(), f.band());
  for (const auto& [key, c] : f.terms()) out.add_term(key.first, key.second, c * QComplex(0, key.second));
  return out;
}

FourierJet fj_pow(const FourierJet& f, unsigned k) {
  FourierJet out = FourierJet::constant(f.trunc_r(), f.band(), 1);
  for (unsigned i = 0; i < k; ++i) out = out * f;
  return out;
}

double majorant_norm(const FourierJet& f, double s) {
  if (!(s > 0)) throw DomainError("norm radius must be positive");
  double acc = 0;
  for (const auto& [key, c] : f.terms()) acc = round_up(acc + round_up(c.abs_upper() * std::pow(s, key.first)));
  return acc;
}

namespace {

struct FourierRing {
  unsigned trunc_r;
  unsigned band;

  FourierJet scalar(const QComplex& c) const { return FourierJet::constant(trunc_r, band, c); }

  FourierJet identifier(std::string_view name, std::optional<long> arg) const {
    if (name == "r" && !arg) return FourierJet::monomial(trunc_r, band, 1, 0);
    if (name == "e" && arg) return FourierJet::monomial(trunc_r, band, 0, static_cast<int>(*arg));
    throw ParseError("unknown identifier (expected r or e(n))");
  }

  std::optional<QComplex> as_scalar(const FourierJet& f) const {
    if (f.is_zero()) return QComplex{};
    if (f.terms().size() == 1 && f.terms().begin()->first == FourierJet::Key{0, 0}) return f.terms().begin()->second;
    return std::nullopt;
  }
};

// e^{c a d_r} h for ord_r(a) >= 2: a finite Lie series.
FourierJet lie_exp_r(const FourierJet& a, const QComplex& c, const FourierJet& h) {
  FourierJet out = h;
  FourierJet term = h;
  for (long j = 1; !term.is_zero(); ++j) {
    term = a * fj_derive_r(term) * (c / QComplex(j));
    out += term;
  }
  return out;
}

}  // namespace

FourierJet parse_fourier(std::string_view text, unsigned trunc_r, unsigned band) {
  FourierRing ring{trunc_r, band};
  detail::ExprParser<FourierRing> parser(text, ring);
  return parser.parse();
}

std::string to_string(const FourierJet& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    std::string factor;
    if (key.first == 1) factor = "r";
    else if (key.first > 1) factor = "r^" + std::to_string(key.first);
    if (key.second != 0) factor += (factor.empty() ? "" : "*") + std::string("e(") + std::to_string(key.second) + ")";
    const bool real = c.is_real();
    const std::string cs = real ? c.str() : "(" + c.str() + ")";
    if (factor.empty()) out += cs;
    else if (c == QComplex(1)) out += factor;
    else out += cs + "*" + factor;
  }
  return out;
}

namespace {

FourierJet rebound(const FourierJet& f, unsigned trunc_r, unsigned band) {
  FourierJet out(trunc_r, band);
  for (const auto& [key, c] : f.terms()) out.add_term(key.first, key.second, c);
  return out;
}

}  // namespace

CircleResult circle_normalize(unsigned k, const FourierJet& g, unsigned trunc_r, std::optional<unsigned> band) {
  if (k < 1) throw DomainError("circle normalization needs k >= 1");
  if (trunc_r < k + 1) throw DomainError("trunc_r must exceed k");
  const unsigned W = trunc_r + k - 1;
  const unsigned B = band.value_or(std::max(g.band(), g.max_frequency() * W));
  const FourierJet gw = rebound(g, W, B);

  CircleResult res;
  res.k = k;
  res.g = rebound(g, trunc_r, B);
  res.work_trunc_r = W;
  const FourierJet r = FourierJet::monomial(W, B, 1, 0);
  const FourierJet f = FourierJet::monomial(W, B, k, 0);
  const FourierJet target = f + FourierJet::monomial(W, B, k + 1, 0) * gw;

  FourierJet b = target - f;
  const QComplex inv_k = QComplex(1) / QComplex(static_cast<long>(k));
  for (unsigned step = 0; !b.is_zero() && step <= W; ++step) {
    // a k r^{k-1} = b
    FourierJet a(W, B);
    for (const auto& [key, c] : b.terms()) a.add_term(key.first - (k - 1), key.second, c * inv_k);
    res.steps.push_back({step, a, b.order_r()});
    b = lie_exp_r(a, QComplex(-1), f + b) - f;
  }
  res.ok = b.is_zero();

  FourierJet sub = r;
  for (auto it = res.steps.rbegin(); it != res.steps.rend(); ++it) sub = lie_exp_r(it->a, QComplex(1), sub);
  res.substitution = rebound(sub, trunc_r, B);
  FourierJet phi(trunc_r, B);
  for (const auto& [key, c] : res.substitution.terms()) phi.add_term(key.first - 1, key.second, c);
  res.phi = phi;
  res.residual = fj_pow(res.substitution, k) - rebound(target, trunc_r, B);
  res.ok = res.ok && res.residual.is_zero();
  return res;
}

}  // namespace fdet
