#include "fdet/normalizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdet/errors.hpp"

namespace fdet {

std::string to_string(Mode mode) { return mode == Mode::jacobian ? "jacobian" : "ideal"; }

Mode parse_mode(const std::string& text) {
  if (text == "jacobian") return Mode::jacobian;
  if (text == "ideal") return Mode::ideal;
  throw ParseError("unknown mode '" + text + "' (expected jacobian or ideal)");
}

namespace {

std::string power_name(const std::string& base, unsigned e) { return base + "^" + std::to_string(e); }

std::string check_hypothesis(const Jet& f, const Jet& g, const NormalizeOptions& options) {
  if (options.mode == Mode::jacobian) {
    const MilnorAnalysis a = analyze_milnor(f);
    if (!a.determinacy_exponent)
      throw PreconditionError("g in M^{mu+2}: no mu with M^mu c Jf certified at trunc " + std::to_string(f.trunc()));
    const unsigned need = *a.determinacy_exponent + 2;
    if (g.order() < need)
      throw PreconditionError("g in " + power_name("M", need) + " fails: ord(g) = " + std::to_string(g.order()));
    return "g in " + power_name("M", need) + ", M^" + std::to_string(*a.determinacy_exponent) + " c Jf";
  }
  const IdealData& I = *options.ideal;
  const NuResult nu = nu_exponent(f, I);
  if (!nu.nu) throw PreconditionError("g in I^nu: " + nu.verdict);
  const PowerMembership pm = ideal_power_contains(I, *nu.nu, g);
  if (!pm.member) throw PreconditionError("g in " + power_name("I", *nu.nu) + " fails");
  std::string out = "g in " + power_name("I", *nu.nu) + ", " + power_name("I", *nu.nu) + " c I(f)";
  if (!pm.certified) out += " (membership checked modulo the truncation only)";
  return out;
}

double sampled_m(const RightInverse& j, unsigned k, const ScaleParams& scale, double& N_hat) {
  N_hat = estimate_inverse_bound(j, k, scale);
  return std::min(1.0, N_hat) / std::ldexp(1.0, static_cast<int>(k) + 1);
}

std::vector<Derivation> step_fields(const Certificate& cert) {
  std::vector<Derivation> us;
  for (const Step& st : cert.steps) us.push_back(st.u);
  return us;
}

JetMap phi_of(std::vector<Derivation> us, std::size_t n, unsigned trunc) {
  std::reverse(us.begin(), us.end());
  return exp_product(us, n, trunc);
}

JetMap inverse_of(const std::vector<Derivation>& us, std::size_t n, unsigned trunc) {
  std::vector<Derivation> neg;
  for (const Derivation& u : us) neg.push_back(-u);
  return exp_product(neg, n, trunc);
}

}  // namespace

static Jet lift(const Jet& f, unsigned trunc) {
  Jet out(f.n_vars(), trunc);
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

Certificate normalize(const Jet& f_in, const Jet& g_in, const NormalizeOptions& options) {
  if (f_in.n_vars() != g_in.n_vars() || f_in.trunc() != g_in.trunc())
    throw DimensionError("f and g must share n_vars and trunc");
  if (f_in.trunc() < 2) throw DomainError("trunc must be at least 2");
  if (options.mode == Mode::ideal && !options.ideal) throw DomainError("ideal mode needs an ideal");
  options.scale.validate();
  const std::size_t n = f_in.n_vars();
  const unsigned ord_f = f_in.order();
  const unsigned trunc = f_in.trunc() + (ord_f >= 2 && ord_f != kInfiniteOrder ? ord_f - 1 : 0);
  const Jet f = lift(f_in, trunc);
  const Jet g = lift(g_in, trunc);
  std::optional<IdealData> ideal;
  if (options.ideal) {
    std::vector<Jet> gens;
    for (const Jet& q : options.ideal->generators()) gens.push_back(lift(q, trunc));
    ideal.emplace(std::move(gens), std::min(options.ideal->valid_degree(), f_in.trunc()) + (trunc - f_in.trunc()));
  }
  NormalizeOptions opts = options;
  opts.ideal = ideal;

  Certificate cert;
  cert.f = f;
  cert.g = g;
  cert.trunc = trunc;
  cert.requested_trunc = f_in.trunc();
  cert.mode = options.mode;
  cert.grid = options.scale.grid;
  cert.norm_scale = std::max(1.0, majorant_norm(f, options.scale.S));
  cert.phi = JetMap::identity(n, trunc);
  cert.inverse = cert.phi;
  cert.residual = Jet(n, trunc);
  cert.ok = true;

  if (g.is_zero()) {
    cert.hypothesis = "g = 0";
    cert.schedule = certify_schedule_grid(cert, options.scale, options.k, options.m.value_or(0));
    return cert;
  }
  cert.hypothesis = options.check_hypothesis ? check_hypothesis(f, g, opts) : "not checked";

  LieAlgebra algebra = options.mode == Mode::jacobian ? jacobian_algebra(n, trunc) : ideal_algebra(*opts.ideal, trunc);
  const RightInverse j(f, std::move(algebra), options.lsq_radius);

  Jet b = g;
  for (unsigned step = 0; !b.is_zero() && step <= trunc; ++step) {
    RightInverseSolution sol = j.solve(b);
    if (!sol.ok) {
      cert.ok = false;
      break;
    }
    cert.steps.push_back({step, sol.u, b.order(), derivation_norm_bound(sol.u, options.scale.S)});
    b = exponential(-sol.u, f + b) - f;
  }
  if (!b.is_zero()) cert.ok = false;

  const std::vector<Derivation> us = step_fields(cert);
  cert.phi = phi_of(us, n, trunc);
  cert.inverse = inverse_of(us, n, trunc);
  cert.residual = jet_compose(f, cert.phi) - (f + g);

  double m = 0;
  if (options.m) {
    m = *options.m;
  } else {
    m = sampled_m(j, options.k, options.scale, cert.N_estimate);
  }
  cert.schedule = certify_schedule_grid(cert, options.scale, options.k, m);
  return cert;
}

RemainderBound remainder_bound(const NormEstimate& u, double tau, double s) {
  RemainderBound out;
  if (u.k != 1 || !(s > 0) || !(s < tau) || tau > u.tau || u.C < 0) return out;
  const double gap = tau - s;
  if (round_up(3 * u.C / gap) > 0.5) return out;
  out.precondition_ok = true;
  out.bound = round_up(round_up(u.C * u.C) / (gap * gap));
  return out;
}

ScheduleVerdict certify_schedule(const Certificate& cert, double s, unsigned k, double m) {
  if (!(s > 0)) throw DomainError("schedule radius must be positive");
  ScheduleVerdict out;
  out.s = s;
  out.k = k;
  out.m = m;
  out.first_checked = cert.steps.size();
  for (std::size_t i = 0; i < cert.steps.size(); ++i) {
    if (cert.steps[i].u.order() >= k + 3) {
      out.first_checked = i;
      break;
    }
  }
  double s_n = 2 * s;
  for (std::size_t i = out.first_checked; i < cert.steps.size(); ++i) {
    const unsigned idx = static_cast<unsigned>(i - out.first_checked);
    const double sigma = s / std::ldexp(1.0, static_cast<int>(idx) + 2);
    ScheduleEntry e;
    e.n = cert.steps[i].n;
    e.s_n = s_n;
    e.sigma_n = sigma;
    e.C = derivation_norm_bound(cert.steps[i].u, s_n).C;
    e.bound = m * std::pow(sigma, static_cast<double>(k + 2));
    e.ok = e.C <= e.bound;
    out.steps_ok = out.steps_ok && e.ok;
    out.entries.push_back(e);
    s_n -= 2 * sigma;
  }
  std::vector<NormEstimate> est;
  for (const Step& st : cert.steps) est.push_back(derivation_norm_bound(st.u, s));
  out.criterion = check_product_criterion(est, s);
  return out;
}

ScheduleVerdict certify_schedule_grid(const Certificate& cert, const ScaleParams& scale, unsigned k, double m) {
  scale.validate();
  std::optional<ScheduleVerdict> best;
  for (double s : scale.grid) {
    ScheduleVerdict v = certify_schedule(cert, s, k, m);
    if (!best) {
      best = std::move(v);
      continue;
    }
    const auto rank = [](const ScheduleVerdict& x) { return std::make_tuple(x.ok(), x.criterion.ok, x.criterion.margin); };
    if (rank(v) > rank(*best)) best = std::move(v);
  }
  if (!best) throw DomainError("empty scale grid");
  return *best;
}

VerifyReport verify_certificate_report(const Certificate& cert) {
  const auto fail = [](std::string why) { return VerifyReport{false, std::move(why)}; };
  try {
    const Jet& f = cert.f;
    const Jet& g = cert.g;
    if (f.n_vars() != g.n_vars() || f.trunc() != g.trunc() || f.trunc() != cert.trunc) return fail("f, g and trunc disagree");
    const std::size_t n = f.n_vars();
    if (cert.phi.n_vars() != n || cert.phi.trunc() != cert.trunc) return fail("phi has the wrong shape");

    Jet b = g;
    unsigned last_order = 0;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
      const Step& st = cert.steps[i];
      if (st.n != i) return fail("step numbering is not consecutive");
      if (st.u.n_vars() != n || st.u.trunc() != cert.trunc) return fail("step " + std::to_string(i) + ": u has the wrong shape");
      if (st.u.order() < 2) return fail("step " + std::to_string(i) + ": u has order < 2");
      if (b.is_zero()) return fail("step " + std::to_string(i) + ": b is already zero");
      if (b.order() != st.ord_b) return fail("step " + std::to_string(i) + ": recorded ord(b) differs");
      if (i > 0 && st.ord_b <= last_order) return fail("step " + std::to_string(i) + ": ord(b) does not increase");
      if (!(apply(st.u, f) == b)) return fail("step " + std::to_string(i) + ": u(f) != b");
      last_order = st.ord_b;
      b = exponential(-st.u, f + b) - f;
    }
    const std::vector<Derivation> us = step_fields(cert);
    if (!(phi_of(us, n, cert.trunc) == cert.phi)) return fail("phi is not the product of the recorded exponentials");
    const Jet residual = jet_compose(f, cert.phi) - (f + g);
    if (!(residual == cert.residual)) return fail("recorded residual differs from f o phi - (f + g)");
    if (cert.ok && !b.is_zero()) return fail("run claims success but the final b is nonzero");
    if (cert.ok && !residual.is_zero()) return fail("run claims success but the residual is nonzero");
    if (!(compose_maps(cert.phi, cert.inverse) == JetMap::identity(n, cert.trunc))) return fail("inverse map is not inverse to phi");
  } catch (const Error& e) {
    return fail(e.what());
  }
  return {true, "ok"};
}

bool verify_certificate(const Certificate& cert) { return verify_certificate_report(cert).ok; }

}  // namespace fdet
