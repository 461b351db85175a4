#pragma once

#include <json.hpp>

#include "tgrowth/caps.hpp"
#include "tgrowth/coset_geometry.hpp"
#include "tgrowth/exact.hpp"
#include "tgrowth/field.hpp"
#include "tgrowth/groups.hpp"
#include "tgrowth/growth.hpp"
#include "tgrowth/incidence.hpp"
#include "tgrowth/structure.hpp"

namespace tgrowth {

using Json = nlohmann::ordered_json;

// Encoders. Every number is an exact integer; rationals are {"num", "den"} and
// integers too large for 64 bits are decimal strings.

Json encode(const FieldSpec& spec);
/// Accepts {"p", "r", "modulus"} or the shorthand {"q"} for a built-in field.
FieldSpec decode_field_spec(const Json& j);

Json encode(const T2Element& g);
Json encode(const HeisElement& g);
Json encode(const Ratio& r);
Json encode(const BigInt& n);
Json encode(const SqrtForm& f);
Json encode(const SubgroupTag& tag);
SubgroupTag decode_subgroup_tag(const Field& field, const Json& j);
Json encode(const LemmaVerdicts& v);
Json encode(const GrowthReport& r);
Json encode(const CosetProfileT2& p);
Json encode(const CosetProfileHeis& p);
Json encode(const BoundRecord& b);
Json encode(const SubfieldSpec& s);
Json encode(const SumProductVerdict& v);
Json encode(const StructureReport& r);
Json encode(const RudnevRecord& r);

/// {"field", "points": [{"v": [4 ints], "w": int}], "planes": [...]}.
Json encode(const IncidenceInstance& inst);
/// Normalizes and merges the vectors on load.
IncidenceInstance decode_instance(const Json& j);

/// {"max_set", "max_pairs", "oracle"}; missing keys keep their defaults.
Caps decode_caps(const Json& j);
Json encode(const Caps& caps);

}  // namespace tgrowth
