#pragma once

#include "lindyn/classifier.hpp"
#include "lindyn/fhc.hpp"
#include "lindyn/operator_engine.hpp"

#include <json.hpp>

namespace lindyn {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

// Rationals travel as "num/den" strings; plain JSON numbers are accepted on
// input (ints exactly, decimals via base-10 expansion).
Rational rational_from_json(const Json& j);
std::string rational_to_json(const Rational& q);

WeightProfile profile_from_json(const Json& j);
OrderedJson profile_to_json(const WeightProfile& wp);

AtomicSystem system_from_json(const Json& j);
OrderedJson system_to_json(const AtomicSystem& sys);

LpVector vector_from_json(const Json& j);
OrderedJson vector_to_json(const LpVector& v);

OrderedJson cert_to_json(const CertReal& c);
OrderedJson summability_to_json(const SummabilityResult& s);
const char* verdict3_name(Verdict3 v);
OrderedJson classification_to_json(const ClassificationReport& rep);

}  // namespace lindyn
