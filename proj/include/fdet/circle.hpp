#pragma once

// Germs along the circle r = 0 in (C/2piZ) x C: finite sums
// sum a_{m,n} r^m e^{i n theta} with m <= trunc_r and |n| <= band.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fdet/qcomplex.hpp"

namespace fdet {

class FourierJet {
 public:
  using Key = std::pair<unsigned, int>;  // (power of r, frequency)
  using Terms = std::map<Key, QComplex>;

  FourierJet(unsigned trunc_r, unsigned band);

  static FourierJet monomial(unsigned trunc_r, unsigned band, unsigned m, int n, const QComplex& c = 1);
  static FourierJet constant(unsigned trunc_r, unsigned band, const QComplex& c);

  unsigned trunc_r() const { return trunc_r_; }
  unsigned band() const { return band_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  QComplex coeff(unsigned m, int n) const;
  /// Ignored when m > trunc_r; throws BandOverflow when |n| > band.
  void add_term(unsigned m, int n, const QComplex& c);

  /// Smallest power of r present; kInfiniteOrder-like max for 0.
  unsigned order_r() const;
  /// Largest |n| present.
  unsigned max_frequency() const;

  /// Same coefficients with another band (throws BandOverflow if they do not fit).
  FourierJet with_band(unsigned band) const;

  FourierJet& operator+=(const FourierJet& o);
  FourierJet& operator-=(const FourierJet& o);
  FourierJet& operator*=(const QComplex& c);
  friend FourierJet operator+(FourierJet a, const FourierJet& b) { return a += b; }
  friend FourierJet operator-(FourierJet a, const FourierJet& b) { return a -= b; }
  friend FourierJet operator*(FourierJet a, const QComplex& c) { return a *= c; }
  friend FourierJet operator*(const QComplex& c, FourierJet a) { return a *= c; }
  friend FourierJet operator*(const FourierJet& a, const FourierJet& b);
  FourierJet operator-() const;
  friend bool operator==(const FourierJet& a, const FourierJet& b);

 private:
  void check_compatible(const FourierJet& o) const;

  unsigned trunc_r_;
  unsigned band_;
  Terms terms_;
};

FourierJet fj_derive_r(const FourierJet& f);
/// Multiplies the (m, n) coefficient by i n.
FourierJet fj_derive_theta(const FourierJet& f);
FourierJet fj_pow(const FourierJet& f, unsigned k);

/// sum |a_{m,n}| s^m, rounded up.
double majorant_norm(const FourierJet& f, double s);

/// Text such as "r^2*e(3) + 1/2*r*e(-1)"; e(n) is e^{i n theta}.
FourierJet parse_fourier(std::string_view text, unsigned trunc_r, unsigned band);
std::string to_string(const FourierJet& f);

struct CircleStep {
  unsigned n = 0;
  /// u_n = a d_r.
  FourierJet a{0, 0};
  unsigned ord_b = 0;
};

struct CircleResult {
  unsigned k = 1;
  FourierJet g{0, 0};
  /// r -> r phi(r, theta); `substitution` is r phi.
  FourierJet substitution{0, 0};
  FourierJet phi{0, 0};
  /// The iteration runs at trunc_r + k - 1 so that r phi is exact through r^{trunc_r}.
  unsigned work_trunc_r = 0;
  std::vector<CircleStep> steps;
  /// substitution^k - (r^k + r^{k+1} g) at trunc_r.
  FourierJet residual{0, 0};
  bool ok = false;
};

/// Brings r^k + r^{k+1} g to r^k with derivations a d_r, ord_r(a) >= 2.
/// The working band defaults to max(band(g), max_frequency(g) * trunc_r).
CircleResult circle_normalize(unsigned k, const FourierJet& g, unsigned trunc_r, std::optional<unsigned> band = {});

}  // namespace fdet
