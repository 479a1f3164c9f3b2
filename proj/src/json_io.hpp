#pragma once

#include <json.hpp>

#include "criteria.hpp"
#include "functional.hpp"
#include "quadrature.hpp"
#include "search.hpp"
#include "sequences.hpp"
#include "testfn.hpp"

namespace expcrit {

// ordered_json keeps key order stable: reports must be byte-identical
// across runs with the same seed and config
using Json = nlohmann::ordered_json;

Json to_json(const QuadratureResult& r);
Json to_json(const MembershipReport& r);
Json to_json(const FunctionalReport& r);
Json to_json(const Verdict& v);
Json to_json(const SectorOutcome& s);
Json to_json(const BMAssignment& a);
Json to_json(const BMRadiusResult& r);
Json to_json(const TrendStat& t);
Json to_json(const SearchTrace& t);
Json to_json(const SweepResult& s);

Json family_to_json(const FamilySpec& f);

// {"family": "...", "params": {...}}
FamilySpec parse_family(const Json& j);
// {"kind": "...", "params": {...}, "count": N} or
// {"kind": "explicit", "points": [[re, im], ...]}
PointSequence parse_sequence(const Json& j);
QuadratureConfig parse_quadrature(const Json& j);
// {"sigma": x} or {"d": x}, exactly one
TypeParameter parse_type(const Json& j);

}  // namespace expcrit
