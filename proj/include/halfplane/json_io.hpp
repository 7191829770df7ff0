#pragma once

#include <json.hpp>

#include "halfplane/approx.hpp"
#include "halfplane/function.hpp"
#include "halfplane/moebius.hpp"
#include "halfplane/norms.hpp"
#include "halfplane/operators.hpp"
#include "halfplane/quadrature.hpp"

namespace halfplane {

using Json = nlohmann::ordered_json;

// All parse_* functions throw ParseError on malformed input.

Json complex_to_json(cplx z);
cplx parse_complex(const Json& j);

Json moebius_to_json(const MoebiusMap& m);
MoebiusMap parse_moebius(const Json& j);

/// {"kind":"rational","num":[…],"den":[…]} | {"kind":"diskpoly","coeffs":[…]}
/// | {"kind":"builtin","name":…,"params":[…]}. Coefficients ascend in degree.
HalfPlaneFn parse_function(const Json& j);
/// Throws std::invalid_argument for functions without a spec form
/// (derived builtins, sampled pullbacks are emitted as diskpoly).
Json function_to_json(const HalfPlaneFn& f);

/// {"kind":"moebius","map":…} | {"kind":"disk_conjugate","psi":…} |
/// {"kind":"named","name":…}; psi is a Möbius object or a coefficient list.
SelfMap parse_selfmap(const Json& j);
Json selfmap_to_json(const SelfMap& phi);

RegionMask parse_region(const Json& j);
Json region_to_json(const RegionMask& r);

Json to_json(const NormReport& r);
Json to_json(const QuadratureResult& q);
Json to_json(const UnivalenceVerdict& v);

/// Parses JSON text; throws ParseError.
Json parse_json_text(const std::string& text);

}  // namespace halfplane
