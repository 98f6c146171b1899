#pragma once

// The normalization iteration b_{n+1} = e^{-u_n}(f + b_n) - f with
// u_n = j(b_n), run on exact jets, and the norm-based certificate layered on
// top of the finished run.

#include <optional>
#include <string>
#include <vector>

#include "fdet/ideal.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/right_inverse.hpp"
#include "fdet/scale_norm.hpp"

namespace fdet {

enum class Mode { jacobian, ideal };

std::string to_string(Mode mode);
Mode parse_mode(const std::string& text);

struct NormalizeOptions {
  Mode mode = Mode::jacobian;
  /// Required in ideal mode.
  std::optional<IdealData> ideal;
  /// Radius of the L^2 weights used by the right inverse.
  Rational lsq_radius = Rational(1, 2);
  ScaleParams scale = ScaleParams::uniform(0.5, 10);
  /// Loss exponent of j used by the schedule check.
  unsigned k = 1;
  /// Schedule constant; defaults to min(1, N^k_S(j)) / 2^{k+1} with a sampled N^k_S(j).
  std::optional<double> m;
  bool check_hypothesis = true;
};

struct Step {
  unsigned n = 0;
  Derivation u = Derivation::zero(1, 0);
  unsigned ord_b = 0;
  /// 1-bounded estimate of u at tau = S.
  NormEstimate norm;
};

struct ScheduleEntry {
  unsigned n = 0;
  double s_n = 0;
  double sigma_n = 0;
  double C = 0;      // N^1_{s_n}(u_n) bound
  double bound = 0;  // m sigma_n^{k+2}
  bool ok = false;
};

struct ScheduleVerdict {
  double s = 0;
  unsigned k = 1;
  double m = 0;
  /// First step whose u has order >= k+3; earlier steps are not checked.
  std::size_t first_checked = 0;
  std::vector<ScheduleEntry> entries;
  ProductCriterion criterion;
  bool steps_ok = true;
  bool ok() const { return steps_ok && criterion.ok; }
};

struct Certificate {
  Jet f{1, 0};
  Jet g{1, 0};
  /// Working truncation: requested_trunc + ord(f) - 1, so that phi is
  /// determined through requested_trunc. All jets below live at trunc.
  unsigned trunc = 0;
  unsigned requested_trunc = 0;
  Mode mode = Mode::jacobian;
  std::string hypothesis;
  std::vector<Step> steps;
  JetMap phi = JetMap::identity(1, 0);
  /// Product of e^{-u_n} in the opposite order; compose_maps(phi, inverse) is the identity.
  JetMap inverse = JetMap::identity(1, 0);
  Jet residual{1, 0};
  /// False when the right inverse failed at some step.
  bool ok = false;
  /// max(1, |f|_S); the norms of u_n and the criteria are invariant under
  /// this rescaling of f and g.
  double norm_scale = 1;
  double N_estimate = 0;
  ScheduleVerdict schedule;
  /// The product criterion is only checked at the grid points.
  std::vector<double> grid;
};

/// f and g are read as polynomials and the run works at trunc + ord(f) - 1.
/// Throws PreconditionError when the hypothesis g in M^{mu+2} (jacobian) or
/// g in I^nu (ideal) fails or cannot be certified.
Certificate normalize(const Jet& f, const Jet& g, const NormalizeOptions& options = {});

struct RemainderBound {
  bool precondition_ok = false;
  /// (tau - s)^{-2} C^2, rounded up; only claimed when precondition_ok.
  double bound = 0;
};

/// Bound on |(e^{-u}(Id + u) - Id) a|_s for |a|_tau <= 1, valid when 3C/(tau-s) <= 1/2.
RemainderBound remainder_bound(const NormEstimate& u, double tau, double s);

/// sigma_n = s/2^{n+2}, s_0 = 2s, s_{n+1} = s_n - 2 sigma_n; checks
/// N^1_{s_n}(u_n) <= m sigma_n^{k+2} and 3 sum N^1_s(u_n) < s.
ScheduleVerdict certify_schedule(const Certificate& cert, double s, unsigned k, double m);

/// Best verdict over the grid: fully passing first, then largest margin.
ScheduleVerdict certify_schedule_grid(const Certificate& cert, const ScaleParams& scale, unsigned k, double m);

struct VerifyReport {
  bool ok = false;
  std::string reason;
};

/// Recomputes phi, the residual and the b_n sequence from f, g and the u_n.
VerifyReport verify_certificate_report(const Certificate& cert);
bool verify_certificate(const Certificate& cert);

}  // namespace fdet
