#pragma once

#include <json.hpp>

#include <string>

#include "groupalg/algebra.hpp"
#include "groupalg/constructions.hpp"
#include "groupalg/grothendieck.hpp"
#include "groupalg/group.hpp"
#include "groupalg/homcount.hpp"
#include "groupalg/numeric.hpp"
#include "groupalg/ring.hpp"

namespace groupalg {

/// All serialized output uses ordered JSON so field order is fixed by the
/// writer, never by hashing: identical inputs produce byte-identical dumps.
using Json = nlohmann::ordered_json;

/// Counts and coefficients are serialized as decimal strings ("42",
/// "-3/7"), never as JSON numbers, so arbitrary-precision values survive
/// any JSON tooling unharmed.
std::string rational_to_json_string(const Rational& q);
Rational rational_from_json_string(const std::string& s);

/// {"label", "order", "table"} with the Cayley table as row-major nested
/// arrays and the identity at index 0.  Parsing runs the full table
/// validation, so a hand-edited file cannot smuggle in a non-group.
Json group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const Json& j);

/// {"group": parent label, "members": ascending element indices}.
Json subgroup_to_json(const SubgroupHandle& h);

/// Prime fields and integers-mod-n round-trip through their compact forms
/// {"type":"Fp","p":..} / {"type":"Zn","n":..}; anything else is written as
/// explicit tables.  The compact forms are used only when both the structure
/// and the label match the canonical constructions, so parsing reproduces
/// the ring exactly.
Json ring_to_json(const RingPtr& r);
RingPtr ring_from_json(const Json& j);

/// {"ring", "dim", "constants", "one", "label"}: structure constants as
/// basis-product coordinate vectors, "one" null for nonunital algebras.
/// Parsing revalidates associativity and the identity law from scratch;
/// construction-specific fast paths (group-algebra unit shortcuts and the
/// like) do not survive the round trip, the arithmetic does.
Json algebra_to_json(const AlgebraPtr& a);
AlgebraPtr algebra_from_json(const Json& j);

/// Unit group summary; the explicit table is included only on request (it
/// is quadratic in the unit count).
Json unit_info_to_json(const UnitGroupInfo& u, bool include_table = false);

/// {"source", "entries": [{"subgroup": class key, "count": decimal}]}.
Json profile_to_json(const HomCountProfile& p);

Json lovasz_to_json(const LovaszResult& r);

/// {"ring", "target": class key, "target_group", "terms": [{"q",
/// "algebra"}]}.  The target group is embedded in full so the certificate
/// reparses without any external registry; the redundant class key is
/// cross-checked on parse.
Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// {"K", "A", "B", "n"}, each structure embedded in full.
Json witness_to_json(const HereditaryWitness& w);
HereditaryWitness witness_from_json(const Json& j);

Json membership_to_json(const ClassRegistry& reg, const MembershipResult& m);
Json hereditary_report_to_json(const ClassRegistry& reg,
                               const HereditaryReport& r);

/// Rows carry every count as a decimal string; witnesses are deduplicated
/// into a content-addressed map and referenced from the rows by hash.
Json pipeline_report_to_json(const PipelineReport& r);

/// FNV-1a over the compact dump; stable across runs because ordered JSON
/// serializes deterministically.
std::string content_hash(const Json& j);

}  // namespace groupalg
