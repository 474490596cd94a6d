#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tsvar/product.hpp"
#include "tsvar/scalar.hpp"
#include "tsvar/scale_fn.hpp"
#include "tsvar/time_scale.hpp"
#include "tsvar/variational.hpp"

namespace tsvar::io {

using nlohmann::json;

/// Exact values as "p/q" strings; floats as shortest round-trip decimals.
json scalar_to_json(const Scalar& s);
/// Strings are parsed exactly. Integers are exact; JSON floats go through
/// their shortest decimal in rational mode.
Scalar scalar_from_json(const json& j, NumericMode mode);

/// {"mode": "rational"|"float", "pieces": [{"interval": [lo, hi]}, {"point": p}]}
json scale_to_json(const TimeScale& T);
TimeScale scale_from_json(const json& j);

/// {"scale": <scale>, "values": {"t": "v", ...}}
json table_to_json(const ScaleFn& f);
ScaleFn table_from_json(const json& j);

/// {"scale1": <scale>, "scale2": <scale>, "values": [[...], ...]} with rows
/// indexed by the first axis.
json surface_table_to_json(const SurfaceFn& f);
SurfaceFn surface_table_from_json(const json& j);

/// "builtin:<name>" or "poly:<expr in t, y, v>".
Lagrangian lagrangian_from_text(std::string_view text);
/// "builtin:<name>" or "poly:<expr in t1, t2, y0, y1, y2>".
DoubleLagrangian double_lagrangian_from_text(std::string_view text);

/// {"scale", "a", "b", "lagrangian", "boundary": {"ya", "yb"}}
VariationalProblem problem_from_json(const json& j);
/// {"scale1", "scale2", "lagrangian", optional "rect": [a1, b1, a2, b2]}
DoubleProblem double_problem_from_json(const json& j);

/// A scale given inline or as a path to a JSON file.
TimeScale resolve_scale(const json& j);

/// ParseError carries "path:line:column: message".
json load_json_file(const std::filesystem::path& path);
json parse_json_text(std::string_view text, std::string_view origin);

} // namespace tsvar::io
