#pragma once

#include <string>

#include "json.hpp"
#include "orlab/crossed.hpp"
#include "orlab/geometry.hpp"
#include "orlab/orlicz_function.hpp"

namespace olab {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "orlicz-lab/v1";

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
// Throws SchemaError on unreadable files, parse errors, or a "schema" field other than kSchemaVersion.
json load_json(const std::string& path_or_inline);

// {"blocks": [{"dim": n, "weight": w}, ...]}
AlgebraPtr parse_algebra(const json& j);
// {"blocks": [matrix, ...]} where a matrix is an array of rows and an entry is a number or [re, im].
// A bare array of matrices is accepted too. With a null algebra the block dimensions are read off
// the matrices and every weight is 1, unless the document carries its own "algebra".
AlgebraElement parse_element(const json& j, AlgebraPtr alg = nullptr);
// {"rho": element} or null for the tracial state.
DensityPtr parse_density(const json& j, const AlgebraPtr& alg);

// {"kind": "power", "p": 2, "coef"?: c} | {"kind": "linf", "cutoff"?: c} | {"kind": "one-cap-inf"} |
// {"kind": "one-plus-inf"} | {"kind": "table", "knots": [[t, v], ...], "b_psi"?: number | "inf"}
OrliczFunction parse_psi(const json& j);
json psi_to_json(const OrliczFunction& psi);

// Profile argument: {"kind": "power", "a": a} | {"kind": "constant", "c": c} | {"kind": "min-one"} |
// {"kind": "lux", "psi": psi} | {"kind": "orl", "psi": psi}, optionally {"sqrt": true}.
Profile parse_profile(const json& j);
// {"rho"?: ..., "terms": [{"base": element, "profile": profile, "argument": "exp_t" | "density",
//  "placement": "right" | "left" | "sandwich"}, ...]}
CrossedElement parse_crossed(const json& j, const AlgebraPtr& alg);

// {"knots": [[t, phi], ...]} or {"fundamental": "lux" | "orl", "psi": psi} sampled on the default grid.
QuasiConcaveProfile parse_fundamental(const json& j);

json number_or_inf(double x);
json element_to_json(const AlgebraElement& a);

}  // namespace olab
