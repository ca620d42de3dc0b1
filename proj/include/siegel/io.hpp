#pragma once

// JSON forms used by the CLI.
//
//   SiegelPoint:       {"g": int, "re": [[...]], "im": [[...]]}   row-major doubles
//   SymplecticMatrix:  {"g": int, "entries": [[...]]}             integers
//   Family:            {"kind": "chain" | "nonseparating", "tau": [[re, im], ...],
//                       "order": [...], "glue_points": [[re, im], ...],
//                       "t": [[re, im], ...], "a", "b", "c0", "c1": [re, im]}
//
// Orders are 1-based in JSON. glue_points lists one point per junction (used
// on both sides) or two per junction (left, right). For a non-separating
// family, tau/order/glue_points describe the base chain and "t" holds the base
// junction parameters followed by the handle parameter; optional
// "handle_position" (1-based) and "pi" (g x g of [re, im]) are accepted.
//
// Malformed input raises ConfigError.

#include <json.hpp>

#include <string>
#include <variant>

#include "siegel/boundary.hpp"
#include "siegel/plumbing.hpp"
#include "siegel/reduction.hpp"
#include "siegel/symplectic.hpp"

namespace siegel::io {

using nlohmann::json;

json to_json(const SiegelPoint& z);
SiegelPoint siegel_point_from_json(const json& j);

json to_json(const SymplecticMatrix& m);
SymplecticMatrix symplectic_from_json(const json& j);

json to_json(const ReductionResult& r);

using Family = std::variant<TorusChainFamily, NonSeparatingFamily>;
json to_json(const TorusChainFamily& fam);
json to_json(const NonSeparatingFamily& fam);
Family family_from_json(const json& j);

json to_json(const BoundaryVerdict& v);
json to_json(const ReducibilityReport& r);

json parse(const std::string& text);
json read_file(const std::string& path);

}  // namespace siegel::io
