#pragma once

#include <json.hpp>

#include <optional>
#include <string>

#include "zsup/atlas.hpp"
#include "zsup/box.hpp"
#include "zsup/clifford.hpp"
#include "zsup/grading.hpp"
#include "zsup/morphism.hpp"
#include "zsup/series.hpp"

namespace zsup::json {

// Wire formats. Rationals are written as strings ("-3/2"); integers are
// accepted on input. Series travel either as expression strings or as
// sorted term lists [{"mu": [...], "coeff": "<polynomial>"}]. Malformed
// documents raise zsup::ValidationError.

using Json = nlohmann::json;

Rational rational_from_json(const Json& j);
Json to_json(const Rational& q);

Json to_json(const Degree& d);
Degree degree_from_json(const Json& j);

Json to_json(const SignTable& t);
SignTable sign_table_from_json(const Json& j);
Json to_json(const DegreeAssignment& a);
DegreeAssignment assignment_from_json(const Json& j);

Json to_json(const DomainSpec& d);
Domain domain_from_json(const Json& j);

Json series_to_json(const Series& f);
/// Accepts a term list or an expression string.
Series series_from_json(const Json& j, const Domain& domain);

Json to_json(const Box& b);
Box box_from_json(const Json& j);

/// {"source": <domain>, "target": <domain>, "pullbacks": {"y": "<expr>"}}
Json to_json(const Morphism& m);
Morphism morphism_from_json(const Json& j);
/// Optional "source_box"/"target_box" (+ "samples", "seed") of a morphism
/// document.
std::optional<RangeCheck> range_from_json(const Json& j);

Json to_json(const MorphismReport& r);

/// {"charts": [{"id", "domain", "box"}],
///  "transitions": [{"from", "to", "overlap", "pullbacks"}]}
Json to_json(const Atlas& a);
Atlas atlas_from_json(const Json& j);
Json to_json(const CocycleResult& r);

Json to_json(const ColorAlgebraPresentation& p);
ColorAlgebraPresentation presentation_from_json(const Json& j);
Json to_json(const StructureConstantAlgebra& a);
StructureConstantAlgebra structure_algebra_from_json(const Json& j);

Json to_json(const DvbSpec& s);
DvbSpec dvb_from_json(const Json& j);
Json to_json(const NvbSpec& s);
NvbSpec nvb_from_json(const Json& j);

}  // namespace zsup::json
