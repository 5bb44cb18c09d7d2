#include "curvone/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace curvone {

namespace {

std::string format_double(double v) {
    if (!std::isfinite(v)) throw std::runtime_error("non-finite number in JSON output");
    if (v == 0.0) v = 0.0;  // flush -0.0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump_rec(const Json& j, std::string& out, int depth) {
    const std::string pad(2 * static_cast<size_t>(depth), ' ');
    const std::string pad_in(2 * static_cast<size_t>(depth + 1), ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + Json(it.key()).dump() + ": ";
                dump_rec(it.value(), out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad_in;
                dump_rec(j[i], out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();  // strings, ints, bools, null: canonical already
            return;
    }
}

const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(std::string(what) + ": missing key \"" + key + "\"");
    return j.at(key);
}

double number_of(const Json& j, const char* what) {
    if (!j.is_number()) throw SchemaError(std::string(what) + ": expected a number");
    return j.get<double>();
}

std::vector<Complex> complex_list(const Json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + ": expected a list");
    std::vector<Complex> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(parse_complex(e));
    return out;
}

}  // namespace

std::string canonical_dump(const Json& j) {
    std::string out;
    dump_rec(j, out, 0);
    out += "\n";
    return out;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open input file: " + path);
    Json j = Json::parse(in, nullptr, false);
    if (j.is_discarded()) throw SchemaError("invalid JSON in " + path);
    return j;
}

Complex parse_complex(const Json& j) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError("complex value must be [re, im]");
    return Complex(number_of(j[0], "complex"), number_of(j[1], "complex"));
}

SpherePoint parse_sphere_point(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        throw SchemaError("sphere point string must be \"inf\"");
    }
    return SpherePoint::finite(parse_complex(j));
}

Polynomial parse_polynomial(const Json& j) {
    return Polynomial(complex_list(j, "polynomial"));
}

RationalMap parse_rational_map(const Json& j) {
    return RationalMap(parse_polynomial(field(j, "num", "rational map")),
                       parse_polynomial(field(j, "den", "rational map")));
}

ThirdKindDifferential parse_differential(const Json& j) {
    const Json& ps = field(j, "poles", "differential");
    if (!ps.is_array()) throw SchemaError("differential: \"poles\" must be a list");
    std::vector<FormPole> poles;
    for (const auto& e : ps) {
        FormPole p;
        p.point = parse_sphere_point(field(e, "point", "differential pole"));
        p.residue = number_of(field(e, "residue", "differential pole"), "residue");
        poles.push_back(p);
    }
    return ThirdKindDifferential(std::move(poles));
}

PowerSeries parse_series(const Json& j) {
    return PowerSeries{complex_list(field(j, "coeffs", "power series"), "power series")};
}

PathPolyline parse_path(const Json& j) {
    const Json& pts = field(j, "points", "path");
    if (!pts.is_array() || pts.size() < 2)
        throw SchemaError("path: \"points\" must list at least two vertices");
    PathPolyline p;
    for (const auto& e : pts) p.vertices.push_back(parse_complex(e));
    if (j.contains("closed")) {
        if (!j["closed"].is_boolean()) throw SchemaError("path: \"closed\" must be a boolean");
        p.closed = j["closed"].get<bool>();
    }
    return p;
}

ConicalDivisor parse_divisor(const Json& j) {
    ConicalDivisor d;
    if (j.is_object() && j.contains("angles")) {
        const Json& as = j["angles"];
        if (!as.is_array() || as.empty())
            throw SchemaError("divisor: \"angles\" must be a nonempty list");
        for (size_t k = 0; k < as.size(); ++k)
            d.push_back({SpherePoint::finite(Complex(static_cast<double>(k), 0.0)),
                         number_of(as[k], "divisor angle")});
        return d;
    }
    if (!j.is_array() || j.empty())
        throw SchemaError("divisor: expected {\"angles\": [...]} or a list of entries");
    for (const auto& e : j)
        d.push_back({parse_sphere_point(field(e, "point", "divisor entry")),
                     number_of(field(e, "alpha", "divisor entry"), "alpha")});
    return d;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json sphere_point_json(const SpherePoint& p) {
    if (p.at_infinity) return Json("inf");
    return complex_json(p.value);
}

Json polynomial_json(const Polynomial& p) {
    Json a = Json::array();
    for (const Complex& c : p.coeffs()) a.push_back(complex_json(c));
    return a;
}

Json rational_map_json(const RationalMap& f) {
    return Json{{"num", polynomial_json(f.num())}, {"den", polynomial_json(f.den())}};
}

Json differential_json(const ThirdKindDifferential& w) {
    Json ps = Json::array();
    for (const FormPole& p : w.poles())
        ps.push_back(Json{{"point", sphere_point_json(p.point)}, {"residue", p.residue}});
    return Json{{"poles", ps}};
}

Json divisor_json(const ConicalDivisor& d) {
    Json a = Json::array();
    for (const ConicalEntry& e : d)
        a.push_back(Json{{"point", sphere_point_json(e.point)}, {"alpha", e.alpha}});
    return a;
}

}  // namespace curvone
