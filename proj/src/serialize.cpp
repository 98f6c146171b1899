#include "fdet/serialize.hpp"

#include "fdet/errors.hpp"

namespace fdet {

namespace {

template <typename F>
auto field(const json& j, const char* key, F&& read) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return read(j.at(key));
  } catch (const ParseError& e) {
    throw ParseError(std::string(key) + ": " + e.what());
  } catch (const json::exception& e) {
    throw ParseError(std::string(key) + ": " + e.what());
  } catch (const Error& e) {
    throw ParseError(std::string(key) + ": " + e.what());
  }
}

json norm_json(const NormEstimate& e) { return {{"k", e.k}, {"tau", e.tau}, {"C", e.C}}; }

NormEstimate norm_from_json(const json& j) {
  return {j.at("k").get<unsigned>(), j.at("tau").get<double>(), j.at("C").get<double>()};
}

json criterion_json(const ProductCriterion& c) {
  return {{"sum", c.sum}, {"s", c.s}, {"margin", c.margin}, {"ok", c.ok}};
}

}  // namespace

json to_json(const QComplex& c) { return json::array({c.re().get_str(), c.im().get_str()}); }

QComplex qcomplex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("coefficient must be [re, im]");
  return QComplex(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()));
}

json to_json(const Jet& f) {
  json terms = json::array();
  for (const auto& [e, c] : f.terms()) terms.push_back(json::array({e, to_json(c)}));
  return {{"n_vars", f.n_vars()}, {"trunc", f.trunc()}, {"terms", terms}, {"text", to_string(f)}};
}

Jet jet_from_json(const json& j) {
  const auto n = field(j, "n_vars", [](const json& x) { return x.get<std::size_t>(); });
  const auto t = field(j, "trunc", [](const json& x) { return x.get<unsigned>(); });
  Jet out(n, t);
  field(j, "terms", [&](const json& terms) {
    for (const json& term : terms) {
      if (!term.is_array() || term.size() != 2) throw ParseError("term must be [exponent, coefficient]");
      Exponent e = term[0].get<Exponent>();
      if (e.size() != n) throw ParseError("exponent length differs from n_vars");
      if (total_degree(e) > t) throw ParseError("term above trunc");
      out.add_term(e, qcomplex_from_json(term[1]));
    }
    return 0;
  });
  return out;
}

json to_json(const JetMap& phi) {
  json out = json::array();
  for (const Jet& c : phi.components()) out.push_back(to_json(c));
  return out;
}

JetMap jetmap_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("map must be a nonempty array of jets");
  std::vector<Jet> comps;
  for (const json& c : j) comps.push_back(jet_from_json(c));
  return JetMap(std::move(comps));
}

json to_json(const Derivation& v) {
  json out = json::array();
  for (const Jet& c : v.components()) out.push_back(to_json(c));
  return out;
}

Derivation derivation_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("derivation must be a nonempty array of jets");
  std::vector<Jet> comps;
  for (const json& c : j) comps.push_back(jet_from_json(c));
  return Derivation(std::move(comps));
}

json to_json(const NormEstimate& e) { return norm_json(e); }

json to_json(const ScheduleVerdict& v) {
  json entries = json::array();
  for (const ScheduleEntry& e : v.entries)
    entries.push_back(
        {{"n", e.n}, {"s_n", e.s_n}, {"sigma_n", e.sigma_n}, {"C", e.C}, {"bound", e.bound}, {"ok", e.ok}});
  return {{"s", v.s},       {"k", v.k},         {"m", v.m}, {"first_checked", v.first_checked},
          {"steps_ok", v.steps_ok}, {"entries", entries}};
}

json to_json(const Certificate& c) {
  json steps = json::array();
  for (const Step& st : c.steps)
    steps.push_back({{"n", st.n}, {"u", to_json(st.u)}, {"ord_b", st.ord_b}, {"norm", norm_json(st.norm)}});
  json schedule = json::array();
  for (const ScheduleEntry& e : c.schedule.entries)
    schedule.push_back({{"n", e.n}, {"s_n", e.s_n}, {"sigma_n", e.sigma_n}, {"ok", e.ok}});
  return {{"f", to_json(c.f)},
          {"g", to_json(c.g)},
          {"trunc", c.trunc},
          {"requested_trunc", c.requested_trunc},
          {"mode", to_string(c.mode)},
          {"hypothesis", c.hypothesis},
          {"steps", steps},
          {"phi", to_json(c.phi)},
          {"inverse", to_json(c.inverse)},
          {"residual", to_json(c.residual)},
          {"residual_is_zero", c.residual.is_zero()},
          {"ok", c.ok},
          {"norm_scale", c.norm_scale},
          {"N_estimate", c.N_estimate},
          {"schedule", schedule},
          {"schedule_detail", to_json(c.schedule)},
          {"criterion", criterion_json(c.schedule.criterion)},
          {"criterion_scope", "grid points only"},
          {"grid", c.grid}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("certificate must be a JSON object");
  Certificate c;
  c.f = field(j, "f", jet_from_json);
  c.g = field(j, "g", jet_from_json);
  c.trunc = field(j, "trunc", [](const json& x) { return x.get<unsigned>(); });
  c.mode = field(j, "mode", [](const json& x) { return parse_mode(x.get<std::string>()); });
  c.requested_trunc = j.value("requested_trunc", c.trunc);
  c.hypothesis = j.value("hypothesis", "");
  c.steps = field(j, "steps", [](const json& arr) {
    std::vector<Step> out;
    for (const json& s : arr) {
      Step st;
      st.n = field(s, "n", [](const json& x) { return x.get<unsigned>(); });
      st.u = field(s, "u", derivation_from_json);
      st.ord_b = field(s, "ord_b", [](const json& x) { return x.get<unsigned>(); });
      st.norm = field(s, "norm", norm_from_json);
      out.push_back(std::move(st));
    }
    return out;
  });
  c.phi = field(j, "phi", jetmap_from_json);
  c.inverse = field(j, "inverse", jetmap_from_json);
  c.residual = field(j, "residual", jet_from_json);
  c.ok = field(j, "ok", [](const json& x) { return x.get<bool>(); });
  c.norm_scale = j.value("norm_scale", 1.0);
  c.N_estimate = j.value("N_estimate", 0.0);
  c.grid = j.value("grid", std::vector<double>{});
  if (j.contains("schedule_detail")) {
    const json& d = j.at("schedule_detail");
    c.schedule.s = d.value("s", 0.0);
    c.schedule.k = d.value("k", 1u);
    c.schedule.m = d.value("m", 0.0);
    c.schedule.first_checked = d.value("first_checked", std::size_t{0});
    c.schedule.steps_ok = d.value("steps_ok", true);
    for (const json& e : d.value("entries", json::array()))
      c.schedule.entries.push_back({e.at("n").get<unsigned>(), e.at("s_n").get<double>(), e.at("sigma_n").get<double>(),
                                    e.at("C").get<double>(), e.at("bound").get<double>(), e.at("ok").get<bool>()});
  }
  if (j.contains("criterion")) {
    const json& k = j.at("criterion");
    c.schedule.criterion = {k.value("ok", false), k.value("sum", 0.0), k.value("s", 0.0), k.value("margin", 0.0)};
  }
  if (j.contains("residual_is_zero") && j.at("residual_is_zero").get<bool>() != c.residual.is_zero())
    throw ParseError("residual_is_zero disagrees with residual");
  return c;
}

json to_json(const FourierJet& f) {
  json terms = json::array();
  for (const auto& [key, c] : f.terms()) terms.push_back(json::array({json::array({key.first, key.second}), to_json(c)}));
  return {{"trunc_r", f.trunc_r()}, {"band", f.band()}, {"terms", terms}, {"text", to_string(f)}};
}

FourierJet fourier_from_json(const json& j) {
  FourierJet out(field(j, "trunc_r", [](const json& x) { return x.get<unsigned>(); }),
                 field(j, "band", [](const json& x) { return x.get<unsigned>(); }));
  field(j, "terms", [&](const json& terms) {
    for (const json& t : terms) out.add_term(t.at(0).at(0).get<unsigned>(), t.at(0).at(1).get<int>(), qcomplex_from_json(t.at(1)));
    return 0;
  });
  return out;
}

json to_json(const CircleResult& r) {
  json steps = json::array();
  for (const CircleStep& st : r.steps) steps.push_back({{"n", st.n}, {"a", to_json(st.a)}, {"ord_b", st.ord_b}});
  return {{"k", r.k},
          {"g", to_json(r.g)},
          {"substitution", to_json(r.substitution)},
          {"phi", to_json(r.phi)},
          {"steps", steps},
          {"residual", to_json(r.residual)},
          {"residual_is_zero", r.residual.is_zero()},
          {"ok", r.ok}};
}

json to_json(const std::vector<MembershipRecord>& records) {
  json out = json::array();
  for (const MembershipRecord& rec : records) {
    json mult = json::array();
    for (const Jet& q : rec.multipliers) mult.push_back(to_json(q));
    out.push_back({{"monomial", rec.monomial}, {"multipliers", mult}});
  }
  return out;
}

json to_json(const MilnorAnalysis& a) {
  json out = {{"quotient_dims", a.quotient_dims}, {"verdict", a.verdict}};
  out["mu"] = a.milnor ? json(*a.milnor) : json(nullptr);
  out["det_exp"] = a.determinacy_exponent ? json(*a.determinacy_exponent) : json(nullptr);
  if (a.determinacy_exponent) out["perturbation_space"] = "M^" + std::to_string(*a.determinacy_exponent + 2);
  return out;
}

}  // namespace fdet
