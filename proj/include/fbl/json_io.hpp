#pragma once

#include "fbl/dual.hpp"
#include "fbl/expr.hpp"
#include "fbl/lattice.hpp"
#include "fbl/norm.hpp"

#include <json.hpp>

#include <string>

namespace fbl {

using Json = nlohmann::json;

Json parse_json_text(const std::string& text);

// {"name": string, "elements": [string], "order": [[string,string]],
//  "order_kind": "covers" | "leq"}
LatticeSpec lattice_spec_from_json(const Json& j);
Json lattice_to_json(const FiniteLattice& lattice);

// A string is a builtin descriptor ("chain:4"); an object is a full spec.
LatticePtr lattice_from_json(const Json& j);

// Inline form: {"source": <lattice>, "target": <lattice>, "map": {from: to}}.
// The file-level form with path references is resolved by the CLI.
LatticeHom hom_from_json(const Json& j);
Json hom_to_json(const LatticeHom& hom);

// {"values": {element: "p/q"}}
DualPoint point_from_json(LatticePtr lattice, const Json& j);
Json point_to_json(const DualPoint& point);

// {"op":"gen","elem":e} | {"op":"scale","coef":"p/q","arg":E}
// | {"op":"add"|"sup"|"inf","args":[E,E,...]} | {"op":"abs"|"pos","arg":E}
Expr expr_from_json(LatticePtr lattice, const Json& j);
Json expr_to_json(const Expr& f);

Json cells_to_json(const FiniteLattice& lattice, const std::vector<Cell>& cells);
Json supnorm_to_json(const SupNormCertificate& cert);
Json estimate_to_json(const NormEstimate& estimate);

}  // namespace fbl
