#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <string>

#include "doctest.h"
#include "json.hpp"

using Json = nlohmann::json;

namespace {

constexpr double kTau = 2.0 * std::numbers::pi;

struct RunResult {
    int exit_code;
    std::string out;
};

// Runs the binary, captures stdout; stderr is left alone (the tool keeps it
// empty).
RunResult run(const std::string& args) {
    const std::string cmd = std::string(CURVONE_BIN) + " " + args;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

std::string scratch_dir() {
    static std::string dir = [] {
        char tmpl[] = "/tmp/curvone_cli_XXXXXX";
        REQUIRE(mkdtemp(tmpl) != nullptr);
        return std::string(tmpl);
    }();
    return dir;
}

std::string write_file(const std::string& name, const std::string& text) {
    const std::string path = scratch_dir() + "/" + name;
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << text;
    return path;
}

std::string zsq_path() {
    return write_file("zsq.json", R"({"num": [[0,0],[0,0],[1,0]], "den": [[1,0]]})");
}

std::string football_path() {
    return write_file("football.json",
                      R"({"poles": [{"point": [0,0], "residue": 1.5},)"
                      R"( {"point": "inf", "residue": -1.5}]})");
}

}  // namespace

TEST_CASE("analyze reports divisor, area and curvature") {
    const RunResult r = run("analyze --map " + zsq_path());
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["degree"] == 2);
    REQUIRE(doc["divisor"].size() == 2);
    CHECK(doc["divisor"][0]["alpha"] == 2);
    CHECK(doc["divisor"][0]["point"] == Json::array({0.0, 0.0}));
    CHECK(doc["divisor"][1]["point"] == "inf");
    CHECK(doc["area"].get<double>() == doctest::Approx(4.0 * kTau).epsilon(1e-8));
    REQUIRE(doc["curvature_checks"].size() >= 3);
    for (const auto& c : doc["curvature_checks"])
        CHECK(c["curvature"].get<double>() == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("repeated runs are byte-identical") {
    const std::string cmd = "analyze --map " + zsq_path();
    const RunResult a = run(cmd), b = run(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
    // And through --out.
    const std::string out_path = scratch_dir() + "/analyze_out.json";
    const RunResult c = run(cmd + " --out " + out_path);
    CHECK(c.exit_code == 0);
    CHECK(c.out.empty());
    std::ifstream in(out_path, std::ios::binary);
    const std::string file_text((std::istreambuf_iterator<char>(in)),
                                std::istreambuf_iterator<char>());
    CHECK(file_text == a.out);
}

TEST_CASE("density grid CSV") {
    const std::string csv = scratch_dir() + "/grid.csv";
    const RunResult r = run("analyze --map " + zsq_path() + " --grid " + csv + " --res 16");
    REQUIRE(r.exit_code == 0);
    std::ifstream in(csv);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,y,density");
    int rows = 0;
    double x, y, d;
    char c1, c2;
    while (in >> x >> c1 >> y >> c2 >> d) {
        CHECK(d >= 0.0);
        ++rows;
    }
    CHECK(rows == 16 * 16);
}

TEST_CASE("build descriptor for the football differential") {
    const RunResult r = run("build --omega " + football_path());
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["trivial"] == false);
    CHECK(doc["area"].get<double>() == doctest::Approx(3.0 * kTau).epsilon(1e-9));
    REQUIRE(doc["divisor"].size() == 2);
    CHECK(doc["divisor"][0]["alpha"].get<double>() == doctest::Approx(1.5));
    CHECK(doc["divisor"][1]["alpha"].get<double>() == doctest::Approx(1.5));
    CHECK(doc["classification"].size() == 2);
    CHECK(!doc.contains("reconstruction"));
}

TEST_CASE("build with a loop reports the monodromy multiplier") {
    const std::string loop = write_file(
        "loop.json", R"({"points": [[0.5,0],[0,0.5],[-0.5,0],[0,-0.5]], "closed": true})");
    const RunResult r = run("build --omega " + football_path() + " --loop " + loop);
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    REQUIRE(doc["multipliers"].size() == 1);
    const Json& m = doc["multipliers"][0];
    CHECK(m["modulus"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(m["multiplier"][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(m["multiplier"][1].get<double>()) <= 1e-9);
}

TEST_CASE("build reconstructs trivial differentials") {
    const std::string omega = write_file(
        "trivial.json",
        R"({"poles": [{"point": [0,0], "residue": 2}, {"point": [1,0], "residue": -1},)"
        R"( {"point": [-1,0], "residue": -1}]})");
    const RunResult r = run("build --omega " + omega);
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["trivial"] == true);
    REQUIRE(doc.contains("reconstruction"));
    // f = z^2/(z^2 - 1) up to scale: num c*z^2, den z^2 - 1 (monic).
    const Json& num = doc["reconstruction"]["num"];
    const Json& den = doc["reconstruction"]["den"];
    REQUIRE(num.size() == 3);
    REQUIRE(den.size() == 3);
    const double scale = num[2][0].get<double>();
    CHECK(std::abs(num[0][0].get<double>()) <= 1e-9 * std::abs(scale));
    CHECK(std::abs(num[1][0].get<double>()) <= 1e-9 * std::abs(scale));
    CHECK(den[0][0].get<double>() == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(std::abs(den[1][0].get<double>()) <= 1e-9);
    CHECK(den[2][0].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("frobenius subcommand") {
    const std::string q = write_file("worked_q.json", R"({"coeffs": [[-0.75,0],[0.5,0]]})");
    const RunResult r = run("frobenius --q " + q + " --alpha 2 --order 8");
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["roots"][0].get<double>() == doctest::Approx(-0.5));
    CHECK(doc["roots"][1].get<double>() == doctest::Approx(1.5));
    CHECK(doc["logarithmic"] == true);
    CHECK(doc["R_m"][0].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(std::abs(doc["R_m"][1].get<double>()) <= 1e-12);
    REQUIRE(doc["solutions"].size() == 2);
    CHECK(doc["solutions"][1]["logarithmic"] == true);

    // Non-integer angle: no obstruction entry.  The constant term of q pins
    // the angle, so alpha = 1/2 needs (1 - 1/4)/4.
    const std::string q_half = write_file("half_q.json", R"({"coeffs": [[0.1875,0],[0.5,0]]})");
    const RunResult r2 = run("frobenius --q " + q_half + " --alpha 0.5");
    REQUIRE(r2.exit_code == 0);
    CHECK(Json::parse(r2.out)["R_m"].is_null());
}

TEST_CASE("feasible subcommand") {
    const std::string d22 = write_file("div22.json", R"({"angles": [2, 2]})");
    const RunResult r = run("feasible --divisor " + d22);
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    REQUIRE(doc.is_array());
    CHECK(doc.size() == 7);
    bool extremal_pair = false;
    for (const auto& a : doc)
        extremal_pair = extremal_pair || (a["extrema"].size() == 2 && a["smooth_plus"] == 0 &&
                                          a["smooth_minus"] == 0);
    CHECK(extremal_pair);

    const std::string bad = write_file("div_nonint.json", R"({"angles": [0.3, 0.45, 0.6]})");
    const RunResult r2 = run("feasible --divisor " + bad);
    REQUIRE(r2.exit_code == 0);
    CHECK(Json::parse(r2.out) == "infeasible");
}

TEST_CASE("cusp subcommand") {
    const RunResult r = run("cusp --preset hyp-cusp --rmin 1e-8");
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["cusp_limit"] == true);
    CHECK(doc["verdict"] == "genuine-weak-cusp");
    CHECK(doc["indicator"].get<double>() ==
          doctest::Approx(kTau / std::log(1e8)).epsilon(1e-9));
    CHECK(doc["indicator_curve"].size() == 25);
    CHECK(doc["alpha"].is_null());
    CHECK(doc.contains("ratio_indicator"));

    const RunResult r2 = run("cusp --preset sph-cone --alpha 1.5 --rmin 1e-6");
    REQUIRE(r2.exit_code == 0);
    const Json doc2 = Json::parse(r2.out);
    CHECK(doc2["verdict"] == "no-genuine-weak-cusp");
    CHECK(doc2["indicator"].get<double>() > 2.0);

    const RunResult r3 = run("cusp --preset flat-cone --alpha 1 --rmin 1e-6");
    REQUIRE(r3.exit_code == 0);
    CHECK(Json::parse(r3.out)["indicator"].get<double>() == doctest::Approx(kTau).epsilon(1e-12));
}

TEST_CASE("verify subcommand passes the invariant suite") {
    const RunResult r = run("verify");
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["all_pass"] == true);
    CHECK(doc["properties"].size() == 7);
    for (const auto& p : doc["properties"]) CHECK(p["pass"] == true);
}

TEST_CASE("exit codes distinguish schema violations from module errors") {
    CHECK(run("analyze --map " + scratch_dir() + "/missing.json").exit_code == 2);

    const std::string bad = write_file("bad.json", "{oops");
    CHECK(run("analyze --map " + bad).exit_code == 2);

    const std::string shape = write_file("shape.json", R"({"num": 3})");
    CHECK(run("analyze --map " + shape).exit_code == 2);

    // Value-level rejection comes from the module: unbalanced residues.
    const std::string unbal =
        write_file("unbal.json", R"({"poles": [{"point": [0,0], "residue": 1.5}]})");
    const RunResult r = run("build --omega " + unbal);
    CHECK(r.exit_code == 1);
    CHECK(Json::parse(r.out).contains("error"));

    CHECK(run("frobulate").exit_code == 2);
    CHECK(run("cusp --preset bogus --rmin 1e-4").exit_code == 2);
}
