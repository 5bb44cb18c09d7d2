#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curvone/character.hpp"
#include "curvone/cusp.hpp"
#include "curvone/feasibility.hpp"
#include "curvone/frobenius.hpp"
#include "curvone/jsonio.hpp"
#include "curvone/pullback.hpp"
#include "curvone/schwarzian.hpp"
#include "curvone/verify.hpp"

using namespace curvone;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

// "inf", "re", or "re,im".
SpherePoint parse_point_flag(const std::string& s) {
    if (s == "inf") return SpherePoint::infinity();
    const size_t comma = s.find(',');
    try {
        size_t used = 0;
        const double re = std::stod(s.substr(0, comma), &used);
        if (used != (comma == std::string::npos ? s.size() : comma))
            throw SchemaError("bad point: " + s);
        const double im = comma == std::string::npos ? 0.0 : std::stod(s.substr(comma + 1));
        return SpherePoint::finite(Complex(re, im));
    } catch (const std::invalid_argument&) {
        throw SchemaError("bad point flag (expected \"inf\", \"re\" or \"re,im\"): " + s);
    }
}

void emit(const Json& doc, const std::string& out_path) {
    const std::string text = canonical_dump(doc);
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write output file: " + out_path);
    out << text;
}

void write_density_csv(const std::string& path, const PullbackMetric& m, int res) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write grid file: " + path);
    out << "x,y,density\n";
    char buf[128];
    for (int iy = 0; iy < res; ++iy) {
        const double y = -2.0 + 4.0 * iy / (res - 1);
        for (int ix = 0; ix < res; ++ix) {
            const double x = -2.0 + 4.0 * ix / (res - 1);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x, y,
                          m.density(Complex(x, y)));
            out << buf;
        }
    }
}

Json tail_json(const RationalMap& s, const SpherePoint& p) {
    const SchwarzianTail t = laurent_tail(s, p);
    Json j;
    j["point"] = sphere_point_json(p);
    j["c"] = t.c;
    j["d"] = complex_json(t.d);
    j["alpha"] = t.c < 0.5 ? Json(weight_to_angle(t.c)) : Json();
    return j;
}

Json solution_json(const FrobeniusSolution& u) {
    Json j;
    j["exponent"] = complex_json(u.exponent);
    Json cs = Json::array();
    for (const Complex& c : u.coeffs) cs.push_back(complex_json(c));
    j["coeffs"] = cs;
    j["logarithmic"] = u.logarithmic;
    j["companion_shift"] = u.companion_shift;
    Json ks = Json::array();
    for (const Complex& c : u.companion_coeffs) ks.push_back(complex_json(c));
    j["companion_coeffs"] = ks;
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"constant-curvature-one cone metrics on the sphere"};
    app.require_subcommand(1);

    std::string map_path, omega_path, divisor_path, q_path, path_path, loop_path;
    std::string preset, grid_path, out_path, at_flag;
    double alpha = 1.0, tol = 1e-10, rmin = 1e-6;
    int res = 256, order = 32;

    auto add_out = [&](CLI::App* c) { c->add_option("--out", out_path, "write JSON here"); };

    CLI::App* analyze = app.add_subcommand("analyze", "pullback metric of a rational map");
    analyze->add_option("--map", map_path, "rational map JSON")->required();
    analyze->add_option("--grid", grid_path, "density CSV output path");
    analyze->add_option("--res", res, "CSV grid resolution")->check(CLI::Range(2, 4096));
    analyze->add_option("--tol", tol, "area tolerance (relative)")
        ->check(CLI::Range(1e-14, 1e-2));
    add_out(analyze);

    CLI::App* schw = app.add_subcommand("schwarzian", "Schwarzian derivative and tails");
    schw->add_option("--map", map_path, "rational map JSON")->required();
    schw->add_option("--at", at_flag, "single point: \"inf\", \"re\" or \"re,im\"");
    add_out(schw);

    CLI::App* build = app.add_subcommand("build", "metric from a third-kind differential");
    build->add_option("--omega", omega_path, "differential JSON")->required();
    build->add_option("--path", path_path, "development path JSON");
    build->add_option("--loop", loop_path, "monodromy loop JSON");
    add_out(build);

    CLI::App* frob = app.add_subcommand("frobenius", "local solutions at a regular singularity");
    frob->add_option("--q", q_path, "potential series JSON")->required();
    frob->add_option("--alpha", alpha, "cone angle / 2 pi")->required()
        ->check(CLI::Range(1e-9, 1e3));
    frob->add_option("--order", order, "series truncation order")->check(CLI::Range(1, 512));
    add_out(frob);

    CLI::App* feas = app.add_subcommand("feasible", "character 1-form patterns for a divisor");
    feas->add_option("--divisor", divisor_path, "divisor JSON")->required();
    add_out(feas);

    CLI::App* cusp = app.add_subcommand("cusp", "weak-cusp diagnostics of a preset factor");
    cusp->add_option("--preset", preset, "sph-cone | flat-cone | hyp-cusp")->required();
    cusp->add_option("--alpha", alpha, "cone angle / 2 pi")->check(CLI::Range(1e-9, 1e3));
    cusp->add_option("--rmin", rmin, "innermost sampled radius")
        ->required()
        ->check(CLI::Range(1e-300, 0.5));
    add_out(cusp);

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_out(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        std::fputs((subs.empty() ? app : *subs.front()).help().c_str(), stdout);
        return 0;
    }

    if (*analyze) {
        const RationalMap f = parse_rational_map(load_json_file(map_path));
        const PullbackMetric m(f);
        Json doc;
        doc["degree"] = f.degree();
        doc["divisor"] = divisor_json(m.singular_divisor());
        doc["area"] = m.area(tol);
        Json checks = Json::array();
        for (double radius : {0.43, 1.31}) {
            for (int k = 0; k < 8 && checks.size() < 6; ++k) {
                const double th = kTau * k / 8 + 0.21;
                const Complex z = radius * Complex(std::cos(th), std::sin(th));
                bool clear = true;
                for (const auto& e : m.singular_divisor())
                    clear = clear && chordal_distance(SpherePoint::finite(z), e.point) >= 1e-2;
                if (!clear || m.density(z) < 1e-6) continue;
                Json c;
                c["point"] = complex_json(z);
                c["curvature"] = m.curvature(z);
                checks.push_back(c);
            }
        }
        doc["curvature_checks"] = checks;
        if (!grid_path.empty()) {
            write_density_csv(grid_path, m, res);
            doc["grid_csv"] = grid_path;
        }
        emit(doc, out_path);
        return 0;
    }

    if (*schw) {
        const RationalMap f = parse_rational_map(load_json_file(map_path));
        const RationalMap s = schwarzian(f);
        Json doc;
        doc["schwarzian"] = rational_map_json(s);
        Json tails = Json::array();
        if (!at_flag.empty()) {
            tails.push_back(tail_json(s, parse_point_flag(at_flag)));
        } else {
            const PullbackMetric m(f);
            for (const auto& e : m.singular_divisor()) tails.push_back(tail_json(s, e.point));
        }
        doc["tails"] = tails;
        emit(doc, out_path);
        return 0;
    }

    if (*build) {
        const ThirdKindDifferential w = parse_differential(load_json_file(omega_path));
        const AbelianMetricDescriptor desc = build_metric(w);
        Json doc;
        doc["divisor"] = divisor_json(desc.divisor);
        doc["area"] = desc.area;
        doc["trivial"] = desc.trivial;
        Json cls = Json::array();
        for (const auto& cp : desc.classification) {
            Json c;
            c["point"] = sphere_point_json(cp.point);
            c["kind"] = psi_kind_name(cp.kind);
            cls.push_back(c);
        }
        doc["classification"] = cls;
        Json mults = Json::array();
        if (!loop_path.empty()) {
            PathPolyline loop = parse_path(load_json_file(loop_path));
            loop.closed = true;
            const Complex m = monodromy_multiplier(w, loop);
            Json e;
            e["multiplier"] = complex_json(m);
            e["modulus"] = std::abs(m);
            mults.push_back(e);
        }
        doc["multipliers"] = mults;
        if (!path_path.empty()) {
            const PathPolyline path = parse_path(load_json_file(path_path));
            const Complex base = path.vertices.front();
            doc["developed_endpoint"] = complex_json(develop(w, base, path));
            doc["psi_endpoint"] = psi_value(w, base, path);
        }
        if (desc.trivial) doc["reconstruction"] = rational_map_json(reconstruct_rational(w));
        emit(doc, out_path);
        return 0;
    }

    if (*frob) {
        const PowerSeries q = parse_series(load_json_file(q_path));
        const auto [s0, s1] = indicial_roots(alpha);
        const auto [u0, u1] = local_solutions(q, alpha, order);
        Json doc;
        doc["roots"] = Json::array({s0, s1});
        doc["solutions"] = Json::array({solution_json(u0), solution_json(u1)});
        const double rounded = std::round(alpha);
        const bool integral = std::abs(alpha - rounded) < 1e-12 && rounded >= 2.0;
        doc["R_m"] =
            integral ? complex_json(resonance_obstruction(q, static_cast<int>(rounded))) : Json();
        doc["logarithmic"] = u1.logarithmic;
        emit(doc, out_path);
        return 0;
    }

    if (*feas) {
        const ConicalDivisor d = parse_divisor(load_json_file(divisor_path));
        const auto assignments = feasibility_search(d);
        Json doc;
        if (assignments.empty()) {
            doc = Json("infeasible");
        } else {
            doc = Json::array();
            for (const auto& a : assignments) {
                Json ja;
                Json saddles = Json::array();
                for (size_t s : a.saddles) saddles.push_back(static_cast<int>(s));
                ja["saddles"] = saddles;
                Json ext = Json::array();
                for (const auto& [idx, sign] : a.extrema) {
                    Json e;
                    e["index"] = static_cast<int>(idx);
                    e["sign"] = sign;
                    ext.push_back(e);
                }
                ja["extrema"] = ext;
                ja["smooth_plus"] = a.smooth_plus;
                ja["smooth_minus"] = a.smooth_minus;
                doc.push_back(ja);
            }
        }
        emit(doc, out_path);
        return 0;
    }

    if (*cusp) {
        ConformalFactor f;
        if (preset == "sph-cone")
            f = spherical_cone_factor(alpha);
        else if (preset == "flat-cone")
            f = flat_cone_factor(alpha);
        else if (preset == "hyp-cusp")
            f = hyperbolic_cusp_factor();
        else
            throw SchemaError("unknown preset: " + preset + " (sph-cone | flat-cone | hyp-cusp)");
        const CylinderProfile c{f};
        const double t0 = std::log(0.5), t1 = std::log(rmin);
        const int n = 25;
        std::vector<double> ts;
        for (int k = 0; k < n; ++k) ts.push_back(t0 + (t1 - t0) * k / (n - 1));
        if (!(t1 < t0)) ts = {t1};
        Json curve = Json::array();
        double vmin = 0.0, vmax = 0.0;
        for (size_t k = 0; k < ts.size(); ++k) {
            const double v = psi_mean_derivative(c, ts[k], 64);
            vmin = k ? std::min(vmin, v) : v;
            vmax = k ? std::max(vmax, v) : v;
            Json e;
            e["log_r"] = ts[k];
            e["value"] = v;
            curve.push_back(e);
        }
        Json doc;
        doc["preset"] = preset;
        doc["alpha"] = preset == "hyp-cusp" ? Json() : Json(alpha);
        doc["r_min"] = rmin;
        doc["indicator_curve"] = curve;
        doc["indicator"] = vmin;
        doc["indicator_note"] = "min over sampled radii; finite-sample proxy for the liminf";
        doc["ratio_indicator"] = psi_mean(c, ts.back(), 64) / ts.back();
        const bool limit = cusp_limit_check_log(f, ts);
        doc["cusp_limit"] = limit;
        doc["verdict"] = (limit && vmin < 0.1 * vmax) ? "genuine-weak-cusp" : "no-genuine-weak-cusp";
        emit(doc, out_path);
        return 0;
    }

    // verify
    const auto results = run_verify_suite();
    Json props = Json::array();
    bool all = true;
    for (const auto& r : results) {
        Json p;
        p["name"] = r.name;
        p["pass"] = r.pass;
        p["detail"] = r.detail;
        props.push_back(p);
        all = all && r.pass;
    }
    Json doc;
    doc["all_pass"] = all;
    doc["properties"] = props;
    emit(doc, out_path);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        Json doc;
        doc["error"] = std::string("bad invocation: ") + e.what();
        std::fputs(canonical_dump(doc).c_str(), stdout);
        return 2;
    } catch (const SchemaError& e) {
        Json doc;
        doc["error"] = e.what();
        std::fputs(canonical_dump(doc).c_str(), stdout);
        return 2;
    } catch (const std::exception& e) {
        Json doc;
        doc["error"] = e.what();
        std::fputs(canonical_dump(doc).c_str(), stdout);
        return 1;
    }
}
