#pragma once

// JSON forms of jets, maps, derivations and certificates. Output is
// canonical (sorted keys, graded-lex terms), so equal inputs give identical
// bytes. Coefficients are exact strings [re, im].

#include <json.hpp>

#include "fdet/circle.hpp"
#include "fdet/ideal.hpp"
#include "fdet/jet.hpp"
#include "fdet/lie_exp.hpp"
#include "fdet/normalizer.hpp"

namespace fdet {

using nlohmann::json;

json to_json(const QComplex& c);
QComplex qcomplex_from_json(const json& j);

json to_json(const Jet& f);
Jet jet_from_json(const json& j);

json to_json(const JetMap& phi);
JetMap jetmap_from_json(const json& j);

json to_json(const Derivation& v);
Derivation derivation_from_json(const json& j);

json to_json(const NormEstimate& e);
json to_json(const ScheduleVerdict& v);

json to_json(const Certificate& c);
/// Throws ParseError with the failing field on malformed input.
Certificate certificate_from_json(const json& j);

json to_json(const FourierJet& f);
FourierJet fourier_from_json(const json& j);
json to_json(const CircleResult& r);

json to_json(const std::vector<MembershipRecord>& records);
json to_json(const MilnorAnalysis& a);

}  // namespace fdet
