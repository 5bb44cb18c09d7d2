#pragma once

#include <stdexcept>
#include <string>

#include "curvone/character.hpp"
#include "curvone/frobenius.hpp"
#include "curvone/pullback.hpp"
#include "curvone/rational_map.hpp"
#include "json.hpp"

namespace curvone {

using Json = nlohmann::json;

// Input violates a documented schema (wrong shape, wrong type, unreadable
// file).  Value-level rejections (residues that do not balance, angles out
// of range, ...) stay with the modules and their domain errors.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic serialization: keys sorted (nlohmann objects iterate in key
// order), every float printed with 17 significant digits, two-space indent,
// trailing newline.  Identical values give identical bytes.
std::string canonical_dump(const Json& j);

Json load_json_file(const std::string& path);

// Schemas.  complex: [re, im].  SpherePoint: [re, im] or "inf".
// RationalMap: {"num": [...], "den": [...]} with ascending complex
// coefficients.  Differential: {"poles": [{"point": ..., "residue": r}]}.
// PowerSeries: {"coeffs": [...]}.  Path: {"points": [[re, im], ...],
// "closed": bool (default false)}.  Divisor: {"angles": [a, ...]} with
// placeholder points 0, 1, 2, ..., or a full [{"point": ..., "alpha": a}]
// list.
Complex parse_complex(const Json& j);
SpherePoint parse_sphere_point(const Json& j);
Polynomial parse_polynomial(const Json& j);
RationalMap parse_rational_map(const Json& j);
ThirdKindDifferential parse_differential(const Json& j);
PowerSeries parse_series(const Json& j);
PathPolyline parse_path(const Json& j);
ConicalDivisor parse_divisor(const Json& j);

Json complex_json(Complex z);
Json sphere_point_json(const SpherePoint& p);
Json polynomial_json(const Polynomial& p);
Json rational_map_json(const RationalMap& f);
Json differential_json(const ThirdKindDifferential& w);
Json divisor_json(const ConicalDivisor& d);

}  // namespace curvone
