#include "tsvar/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tsvar/errors.hpp"

namespace tsvar::io {

namespace {

const json& field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

NumericMode mode_of(const json& j)
{
    if (!j.contains("mode")) {
        return NumericMode::rational;
    }
    if (!j.at("mode").is_string()) {
        throw ParseError("\"mode\" must be a string");
    }
    return parse_numeric_mode(j.at("mode").get<std::string>());
}

} // namespace

json scalar_to_json(const Scalar& s)
{
    return s.str();
}

Scalar scalar_from_json(const json& j, NumericMode mode)
{
    Scalar out;
    if (j.is_string()) {
        out = Scalar::parse(j.get<std::string>());
    } else if (j.is_number_integer()) {
        out = j.is_number_unsigned() ? Scalar(j.get<unsigned long>()) : Scalar(j.get<long>());
    } else if (j.is_number_float()) {
        double d = j.get<double>();
        if (!std::isfinite(d)) {
            throw ParseError("non-finite number");
        }
        out = mode == NumericMode::rational ? Scalar::decimal(d) : Scalar(d);
    } else {
        throw ParseError("expected a number or a numeric string, got " + j.dump());
    }
    return out.in_mode(mode);
}

json scale_to_json(const TimeScale& T)
{
    json pieces = json::array();
    for (const auto& p : T.pieces()) {
        if (p.is_point()) {
            pieces.push_back({{"point", scalar_to_json(p.lo)}});
        } else {
            pieces.push_back({{"interval", json::array({scalar_to_json(p.lo), scalar_to_json(p.hi)})}});
        }
    }
    json out = {{"mode", std::string(to_string(T.mode()))}, {"pieces", pieces}};
    if (T.eps_pt() > 0) {
        out["eps_pt"] = T.eps_pt();
    }
    return out;
}

TimeScale scale_from_json(const json& j)
{
    const NumericMode mode = mode_of(j);
    const json& pieces = field(j, "pieces");
    if (!pieces.is_array()) {
        throw ParseError("\"pieces\" must be an array");
    }
    std::vector<Piece> out;
    for (const auto& p : pieces) {
        if (p.is_object() && p.contains("point")) {
            out.push_back(Piece::point(scalar_from_json(p.at("point"), mode)));
        } else if (p.is_object() && p.contains("interval")) {
            const json& iv = p.at("interval");
            if (!iv.is_array() || iv.size() != 2) {
                throw ParseError("\"interval\" must be a two-element array");
            }
            Scalar lo = scalar_from_json(iv[0], mode);
            Scalar hi = scalar_from_json(iv[1], mode);
            out.push_back(lo == hi ? Piece::point(lo) : Piece::interval(lo, hi));
        } else {
            throw ParseError("each piece must be {\"point\": p} or {\"interval\": [lo, hi]}, got " + p.dump());
        }
    }
    double eps = 0.0;
    if (j.contains("eps_pt")) {
        eps = j.at("eps_pt").get<double>();
    }
    return TimeScale(std::move(out), mode, eps);
}

TimeScale resolve_scale(const json& j)
{
    if (j.is_string()) {
        return scale_from_json(load_json_file(j.get<std::string>()));
    }
    return scale_from_json(j);
}

namespace {

// Inexact values are reloaded in float mode so they are not mistaken for
// exact data.
json scale_for_values(const TimeScale& T, bool all_exact)
{
    return scale_to_json(all_exact ? T : TimeScale(T.pieces(), NumericMode::floating));
}

} // namespace

json table_to_json(const ScaleFn& f)
{
    if (f.table_scale() == nullptr) {
        throw UnsupportedError("only tabulated functions serialize to JSON");
    }
    json values = json::object();
    bool all_exact = true;
    for (const auto& [t, v] : f.table_rows()) {
        values[t.str()] = scalar_to_json(v);
        all_exact = all_exact && v.is_exact();
    }
    return {{"scale", scale_for_values(*f.table_scale(), all_exact)}, {"values", values}};
}

ScaleFn table_from_json(const json& j)
{
    TimeScale T = resolve_scale(field(j, "scale"));
    const json& values = field(j, "values");
    if (!values.is_object()) {
        throw ParseError("\"values\" must be an object mapping points to values");
    }
    std::vector<std::pair<Scalar, Scalar>> rows;
    for (const auto& [key, value] : values.items()) {
        rows.emplace_back(Scalar::parse(key).in_mode(T.mode()), scalar_from_json(value, T.mode()));
    }
    return ScaleFn::table(T, std::move(rows));
}

json surface_table_to_json(const SurfaceFn& f)
{
    if (!f.is_table()) {
        throw UnsupportedError("only tabulated surfaces serialize to JSON");
    }
    json rows = json::array();
    bool all_exact = true;
    for (const auto& row : f.table_values()) {
        json r = json::array();
        for (const auto& v : row) {
            r.push_back(scalar_to_json(v));
            all_exact = all_exact && v.is_exact();
        }
        rows.push_back(std::move(r));
    }
    return {{"scale1", scale_for_values(f.table_scale()->first(), all_exact)},
            {"scale2", scale_for_values(f.table_scale()->second(), all_exact)},
            {"values", rows}};
}

SurfaceFn surface_table_from_json(const json& j)
{
    ProductScale ps(resolve_scale(field(j, "scale1")), resolve_scale(field(j, "scale2")));
    const json& values = field(j, "values");
    if (!values.is_array()) {
        throw ParseError("\"values\" must be an array of rows");
    }
    std::vector<std::vector<Scalar>> rows;
    for (const auto& row : values) {
        if (!row.is_array()) {
            throw ParseError("each row of \"values\" must be an array");
        }
        std::vector<Scalar> r;
        for (const auto& v : row) {
            r.push_back(scalar_from_json(v, ps.first().mode()));
        }
        rows.push_back(std::move(r));
    }
    return SurfaceFn::table(ps, std::move(rows));
}

namespace {

std::pair<std::string_view, std::string_view> split_kind(std::string_view text)
{
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("Lagrangian must be \"builtin:<name>\" or \"poly:<expr>\", got \"" + std::string(text) + "\"");
    }
    return {text.substr(0, colon), text.substr(colon + 1)};
}

} // namespace

Lagrangian lagrangian_from_text(std::string_view text)
{
    auto [kind, body] = split_kind(text);
    if (kind == "builtin") {
        return Lagrangian::builtin(body);
    }
    if (kind == "poly") {
        return Lagrangian::from_polynomial(Polynomial::parse(body, {"t", "y", "v"}));
    }
    throw ParseError("unknown Lagrangian kind \"" + std::string(kind) + "\"");
}

DoubleLagrangian double_lagrangian_from_text(std::string_view text)
{
    auto [kind, body] = split_kind(text);
    if (kind == "builtin") {
        return DoubleLagrangian::builtin(body);
    }
    if (kind == "poly") {
        return DoubleLagrangian::from_polynomial(Polynomial::parse(body, {"t1", "t2", "y0", "y1", "y2"}));
    }
    throw ParseError("unknown double Lagrangian kind \"" + std::string(kind) + "\"");
}

VariationalProblem problem_from_json(const json& j)
{
    TimeScale T = resolve_scale(field(j, "scale"));
    const NumericMode m = T.mode();
    const json& boundary = field(j, "boundary");
    return VariationalProblem(T, lagrangian_from_text(field(j, "lagrangian").get<std::string>()),
                              scalar_from_json(field(j, "a"), m), scalar_from_json(field(j, "b"), m),
                              scalar_from_json(field(boundary, "ya"), m), scalar_from_json(field(boundary, "yb"), m));
}

DoubleProblem double_problem_from_json(const json& j)
{
    ProductScale ps(resolve_scale(field(j, "scale1")), resolve_scale(field(j, "scale2")));
    DoubleLagrangian L = double_lagrangian_from_text(field(j, "lagrangian").get<std::string>());
    if (!j.contains("rect")) {
        return DoubleProblem(std::move(ps), std::move(L));
    }
    const json& r = j.at("rect");
    if (!r.is_array() || r.size() != 4) {
        throw ParseError("\"rect\" must be [a1, b1, a2, b2]");
    }
    const NumericMode m1 = ps.first().mode();
    const NumericMode m2 = ps.second().mode();
    Rect rect{scalar_from_json(r[0], m1), scalar_from_json(r[1], m1), scalar_from_json(r[2], m2),
              scalar_from_json(r[3], m2)};
    return DoubleProblem(std::move(ps), std::move(L), rect);
}

json parse_json_text(std::string_view text, std::string_view origin)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw ParseError(std::string(origin) + ":" + std::to_string(line) + ":" + std::to_string(column)
                         + ": malformed JSON");
    }
}

json load_json_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError(path.string() + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path.string());
}

} // namespace tsvar::io
