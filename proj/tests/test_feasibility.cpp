#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "curvone/feasibility.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace curvone;
using oracles::Rng;

namespace {

ConicalDivisor divisor(const std::vector<double>& alphas) {
    ConicalDivisor d;
    for (size_t i = 0; i < alphas.size(); ++i)
        d.push_back({SpherePoint::finite(Complex(static_cast<double>(i))), alphas[i]});
    return d;
}

std::string encode(const FeasibilityAssignment& a) {
    std::ostringstream s;
    s << "S:";
    for (size_t i : a.saddles) s << i << ",";
    s << " E:";
    for (auto [i, sg] : a.extrema) s << i << (sg > 0 ? "+" : "-") << ",";
    s << " +" << a.smooth_plus << " -" << a.smooth_minus;
    return s.str();
}

std::vector<std::string> encode_all(const std::vector<FeasibilityAssignment>& v) {
    std::vector<std::string> out;
    for (const auto& a : v) out.push_back(encode(a));
    std::sort(out.begin(), out.end());
    return out;
}

// Naive oracle: try every role/sign split and every smooth-pole pattern with
// S up to 6, keeping those where both identities hold to tolerance.
std::vector<std::string> brute_force(const std::vector<double>& alphas) {
    const size_t n = alphas.size();
    std::vector<std::string> out;
    for (size_t rolemask = 0; rolemask < (size_t{1} << n); ++rolemask) {
        FeasibilityAssignment a;
        bool valid = true;
        int zero_sum = 0;
        std::vector<size_t> extremal;
        for (size_t i = 0; i < n; ++i) {
            if (rolemask & (size_t{1} << i)) {
                const double al = alphas[i];
                if (std::abs(al - std::round(al)) > 1e-9 || std::lround(al) < 2) {
                    valid = false;
                    break;
                }
                a.saddles.push_back(i);
                zero_sum += static_cast<int>(std::lround(al)) - 1;
            } else {
                extremal.push_back(i);
            }
        }
        if (!valid) continue;
        for (size_t bits = 0; bits < (size_t{1} << extremal.size()); ++bits) {
            FeasibilityAssignment b = a;
            double total = 0.0;
            for (size_t k = 0; k < extremal.size(); ++k) {
                const int sg = (bits & (size_t{1} << k)) ? 1 : -1;
                total += sg * alphas[extremal[k]];
                b.extrema.push_back({extremal[k], sg});
            }
            for (int s = 0; s <= 6; ++s) {
                if (zero_sum - (static_cast<int>(extremal.size()) + s) != -2) continue;
                for (int plus = 0; plus <= s; ++plus) {
                    if (std::abs(total + plus - (s - plus)) > 1e-9) continue;
                    FeasibilityAssignment c = b;
                    c.smooth_plus = plus;
                    c.smooth_minus = s - plus;
                    out.push_back(encode(c));
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double assignment_area_bound(const std::vector<double>& alphas) {
    double s = 2.0 - static_cast<double>(alphas.size());
    for (double a : alphas) s += a;
    return 2.0 * std::numbers::pi * s;
}

void check_instantiations(const std::vector<double>& alphas, size_t expected_count) {
    const ConicalDivisor d = divisor(alphas);
    const auto found = feasibility_search(d);
    REQUIRE(found.size() == expected_count);
    std::vector<double> want = alphas;
    std::sort(want.begin(), want.end());
    for (const auto& a : found) {
        const ThirdKindDifferential w = instantiate_assignment(d, a);
        const AbelianMetricDescriptor m = build_metric(w);
        std::vector<double> got;
        for (const ConicalEntry& e : m.divisor) got.push_back(e.alpha);
        std::sort(got.begin(), got.end());
        REQUIRE(got.size() == want.size());
        for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-9));
        // All assignments of one divisor share the area 2 pi (sum alpha - n + 2).
        CHECK(m.area == doctest::Approx(assignment_area_bound(alphas)).epsilon(1e-9));
    }
}

}  // namespace

TEST_CASE("two point metrics") {
    CHECK(two_point_check(1.5, 1.5));
    CHECK(!two_point_check(1.5, 2.5));
    CHECK(two_point_check(2.0, 2.0));
    CHECK(two_point_check(3.0, 3.0));
    CHECK(!two_point_check(2.0, 3.0));

    // For non-integer angles feasibility is exactly the diagonal.
    Rng rng(2207);
    for (int t = 0; t < 20; ++t) {
        double a = rng.uniform(0.05, 4.5);
        double b = rng.uniform(0.05, 4.5);
        if (std::abs(a - std::round(a)) < 1e-3) a += 0.0517;
        if (std::abs(b - std::round(b)) < 1e-3) b += 0.0517;
        if (std::abs(a - 1.0) < 1e-3) a += 0.21;
        if (std::abs(b - 1.0) < 1e-3) b += 0.21;
        CHECK(two_point_check(a, a));
        CHECK(two_point_check(a, b) == (std::abs(a - b) < 1e-12));
    }

    // Irrational angles take the floating fallback and still match on the
    // diagonal only.
    CHECK(two_point_check(std::numbers::pi, std::numbers::pi));
    CHECK(!two_point_check(std::numbers::pi, std::numbers::pi + 0.5));

    CHECK_THROWS_AS(two_point_check(1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(two_point_check(0.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(two_point_check(-1.5, 2.0), std::domain_error);
}

TEST_CASE("classic divisors") {
    // Football pattern: opposite residues, no saddles, no extra poles.
    auto football = feasibility_search(divisor({1.5, 1.5}));
    REQUIRE(football.size() == 2);
    for (const auto& a : football) {
        CHECK(a.saddles.empty());
        CHECK(a.extrema.size() == 2);
        CHECK(a.extrema[0].second == -a.extrema[1].second);
        CHECK(a.smooth_total() == 0);
    }

    CHECK(feasibility_search(divisor({1.5, 2.5})).empty());
    CHECK(feasibility_search(divisor({0.5, 0.5, 0.5})).empty());
    CHECK(feasibility_search(divisor({2.0, 2.0, 2.0})).empty());  // parity

    // All seven patterns on two angle-2 points.
    auto two_two = feasibility_search(divisor({2.0, 2.0}));
    CHECK(two_two.size() == 7);
    int saddle_both = 0, mixed = 0, extremal_both = 0;
    for (const auto& a : two_two) {
        if (a.saddles.size() == 2) {
            ++saddle_both;
            CHECK(a.smooth_plus == 2);
            CHECK(a.smooth_minus == 2);
        } else if (a.saddles.size() == 1) {
            ++mixed;
            CHECK(a.smooth_total() == 2);
            CHECK(a.smooth_plus == (a.extrema[0].second > 0 ? 0 : 2));
        } else {
            ++extremal_both;
            CHECK(a.smooth_total() == 0);
        }
    }
    CHECK(saddle_both == 1);
    CHECK(mixed == 4);
    CHECK(extremal_both == 2);

    // The smooth round sphere: one pattern with two opposite unit poles.
    auto smooth = feasibility_search(ConicalDivisor{});
    REQUIRE(smooth.size() == 1);
    CHECK(smooth[0].smooth_plus == 1);
    CHECK(smooth[0].smooth_minus == 1);

    // A single cone point: only an odd integer angle passes the counting
    // identities (and even then realizability fails separately).
    CHECK(feasibility_search(divisor({2.0})).empty());
    CHECK(feasibility_search(divisor({2.5})).empty());
    auto lone3 = feasibility_search(divisor({3.0}));
    REQUIRE(lone3.size() == 1);
    CHECK(lone3[0].saddles.size() == 1);
    CHECK(lone3[0].smooth_plus == 2);
    CHECK(lone3[0].smooth_minus == 2);
}

TEST_CASE("divisor validation") {
    CHECK_THROWS_WITH_AS(feasibility_search(divisor({2.0, -1.0})), "cone angle must be positive",
                         std::domain_error);
    CHECK_THROWS_WITH_AS(feasibility_search(divisor({2.0, 1.0})),
                         "divisor contains a smooth point", std::domain_error);
    ConicalDivisor dup;
    dup.push_back({SpherePoint::finite(Complex(0.0)), 1.5});
    dup.push_back({SpherePoint::finite(Complex(0.0)), 2.0});
    CHECK_THROWS_WITH_AS(feasibility_search(dup), "divisor points must be distinct",
                         std::domain_error);
    CHECK_THROWS_WITH_AS(feasibility_search(divisor(std::vector<double>(11, 1.5))),
                         "divisor too large for exhaustive search", std::domain_error);
}

TEST_CASE("brute force equivalence") {
    Rng rng(907);
    const std::vector<double> menu = {0.5, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 1.0 / 3.0, 4.0 / 3.0};
    for (int trial = 0; trial < 40; ++trial) {
        const size_t n = 1 + static_cast<size_t>(rng.uniform(0.0, 2.999));
        std::vector<double> alphas;
        for (size_t i = 0; i < n; ++i)
            alphas.push_back(menu[static_cast<size_t>(rng.uniform(0.0, 8.999))]);
        const auto fast = encode_all(feasibility_search(divisor(alphas)));
        const auto slow = brute_force(alphas);
        REQUIRE(fast.size() == slow.size());
        for (size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
    }
}

TEST_CASE("identities hold on every returned assignment") {
    Rng rng(118);
    const std::vector<double> menu = {0.5, 1.5, 2.0, 2.5, 3.0, 7.0 / 3.0, 4.0};
    for (int trial = 0; trial < 25; ++trial) {
        const size_t n = 1 + static_cast<size_t>(rng.uniform(0.0, 3.999));
        std::vector<double> alphas;
        for (size_t i = 0; i < n; ++i)
            alphas.push_back(menu[static_cast<size_t>(rng.uniform(0.0, 6.999))]);
        for (const auto& a : feasibility_search(divisor(alphas))) {
            int zero_sum = 0;
            for (size_t i : a.saddles) zero_sum += static_cast<int>(std::lround(alphas[i])) - 1;
            CHECK(zero_sum - (static_cast<int>(a.extrema.size()) + a.smooth_total()) == -2);
            double res = static_cast<double>(a.smooth_plus - a.smooth_minus);
            for (auto [i, sg] : a.extrema) res += sg * alphas[i];
            CHECK(std::abs(res) < 1e-9);
        }
    }
}

TEST_CASE("instantiation realizes the patterns") {
    check_instantiations({1.5, 1.5}, 2);
    check_instantiations({2.0, 2.0}, 7);
    // Both angle-2 points must be saddles: a lone saddle leaves three
    // extremal residues summing in {+-1, +-2, +-5}, never zero.
    check_instantiations({1.5, 1.5, 2.0, 2.0}, 2);
}

TEST_CASE("instantiation with double zeros") {
    // Two angle-3 points: the all-saddle pattern needs two double zeros,
    // realized by a cube-like map; the mixed patterns need one.
    check_instantiations({3.0, 3.0}, 7);
}

TEST_CASE("counting identities do not imply realizability") {
    // A single angle-3 point passes the enumeration but any realization
    // would need a degree-2 rational map with a triple point.
    const ConicalDivisor d = divisor({3.0});
    const auto found = feasibility_search(d);
    REQUIRE(found.size() == 1);
    CHECK_THROWS_WITH_AS(instantiate_assignment(d, found[0]),
                         "instantiation failed: degenerate pole configuration",
                         std::runtime_error);
}

TEST_CASE("assignment validation") {
    const ConicalDivisor d = divisor({2.0, 2.0});
    const auto found = feasibility_search(d);
    REQUIRE(!found.empty());

    FeasibilityAssignment bad = found[0];
    bad.smooth_plus += 2;
    CHECK_THROWS_WITH_AS(instantiate_assignment(d, bad),
                         "assignment does not satisfy the degree identity", std::domain_error);

    const auto smoothy = std::find_if(found.begin(), found.end(),
                                      [](const FeasibilityAssignment& a) {
                                          return a.smooth_plus >= 1 && a.smooth_minus >= 1;
                                      });
    REQUIRE(smoothy != found.end());
    FeasibilityAssignment unbalanced = *smoothy;
    unbalanced.smooth_plus += 1;
    unbalanced.smooth_minus -= 1;
    CHECK_THROWS_WITH_AS(instantiate_assignment(d, unbalanced),
                         "assignment does not satisfy the residue identity", std::domain_error);

    FeasibilityAssignment missing;
    missing.extrema = {{0, 1}};  // leaves index 1 without a role
    CHECK_THROWS_AS(instantiate_assignment(d, missing), std::domain_error);
}
