#pragma once

#include <json.hpp>

#include "egw/abgroup.hpp"
#include "egw/cyclo.hpp"
#include "egw/freeprod.hpp"
#include "egw/lzero.hpp"
#include "egw/metspace.hpp"

namespace egw {

// Insertion-ordered so that reports serialize with stable key order.
using Json = nlohmann::ordered_json;

Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& where);

Json angle_json(const Angle& a);
Angle angle_from_json(const Json& j, const std::string& where);

Json abgroup_json(const AbGroup& g);
AbGroup abgroup_from_json(const Json& j);

// Characters as {"g1": "a/b", ...}; absent generators map to zero.
Json character_json(const Character& chi);
Character character_from_json(const Json& j, int num_generators);

Json finmetric_json(const FinMetric& x);
FinMetric finmetric_from_json(const Json& j);

Json biinv_json(const BiInvMetricGroup& k);
BiInvMetricGroup biinv_from_json(const Json& j);

// Syllable lists: [{"abelian": [2, 0]}, {"free": "a1 a2^-1"}].
Json word_json(const Word& w);
Word word_from_json(const Json& j);

Json stepmap_json(const StepMap& f);
StepMap stepmap_from_json(const Json& j);

Json cyclo_json(const CycloNumber& c);
CycloNumber cyclo_from_json(const Json& j);

// Strict schema pass over a typed input document ({"kind": ..., ...}).
// Returns the empty string when valid, else a description with field path.
std::string validate_document(const Json& j);

}  // namespace egw
