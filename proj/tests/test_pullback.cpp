#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "curvone/pullback.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace curvone;
using std::numbers::pi;

namespace {

Polynomial poly(std::initializer_list<Complex> ascending) {
    return Polynomial(std::vector<Complex>(ascending));
}

RationalMap zpow(int d) {
    std::vector<Complex> c(static_cast<size_t>(d) + 1, Complex(0.0));
    c.back() = 1.0;
    return RationalMap(Polynomial(std::move(c)), Polynomial::one());
}

RationalMap z2_over_z2m1() { return RationalMap(poly({0.0, 0.0, 1.0}), poly({-1.0, 0.0, 1.0})); }
RationalMap cubic_halved() { return RationalMap(poly({0.0, -1.5, 0.0, 0.5}), Polynomial::one()); }
RationalMap quartic() { return RationalMap(poly({0.0, 0.0, -2.0, 0.0, 1.0}), Polynomial::one()); }

bool divisor_matches(const ConicalDivisor& d,
                     std::vector<std::pair<SpherePoint, double>> expected) {
    if (d.size() != expected.size()) return false;
    for (const auto& [pt, alpha] : expected) {
        bool found = false;
        for (const ConicalEntry& e : d)
            if (chordal_distance(e.point, pt) < 1e-7 && std::abs(e.alpha - alpha) < 1e-9)
                found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("density of z^2 at sample points") {
    PullbackMetric m(zpow(2));
    CHECK(m.density(Complex(1.0)) == doctest::Approx(4.0).epsilon(1e-12));
    // Directly against 4|f'|^2/(1+|f|^2)^2 with AD supplying f'.
    oracles::Rng rng(5150);
    for (int i = 0; i < 25; ++i) {
        Complex z = rng.disk(0.95);
        double fp = std::abs(oracles::rational_derivative_ad(m.map(), z));
        double fv = std::abs(m.map().eval(z).value);
        double expect = 4.0 * fp * fp / std::pow(1.0 + fv * fv, 2);
        CHECK(m.density(z) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("density is continuous across the chart seam and smooth at poles") {
    PullbackMetric m(z2_over_z2m1());
    // |z| = 1 +/- eps straddles the evaluation-chart switch.
    for (double th : {0.3, 1.1, 2.9, 4.4}) {
        Complex dir(std::cos(th), std::sin(th));
        double inner = m.density(0.999999 * dir);
        double outer = m.density(1.000001 * dir);
        CHECK(std::abs(inner - outer) < 1e-4 * (inner + outer + 1e-12));
    }
    // z = 1 is a pole of f; the density is finite and positive there.
    double at_pole = m.density(Complex(1.0));
    CHECK(std::isfinite(at_pole));
    CHECK(at_pole > 0.0);
}

TEST_CASE("singular divisors of the corpus maps") {
    CHECK(divisor_matches(PullbackMetric(zpow(2)).singular_divisor(),
                          {{SpherePoint::finite(Complex(0.0)), 2.0}, {SpherePoint::infinity(), 2.0}}));
    CHECK(divisor_matches(PullbackMetric(z2_over_z2m1()).singular_divisor(),
                          {{SpherePoint::finite(Complex(0.0)), 2.0}, {SpherePoint::infinity(), 2.0}}));
    CHECK(divisor_matches(PullbackMetric(cubic_halved()).singular_divisor(),
                          {{SpherePoint::finite(Complex(1.0)), 2.0},
                           {SpherePoint::finite(Complex(-1.0)), 2.0},
                           {SpherePoint::infinity(), 3.0}}));
    CHECK(divisor_matches(PullbackMetric(quartic()).singular_divisor(),
                          {{SpherePoint::finite(Complex(0.0)), 2.0},
                           {SpherePoint::finite(Complex(1.0)), 2.0},
                           {SpherePoint::finite(Complex(-1.0)), 2.0},
                           {SpherePoint::infinity(), 4.0}}));
    // Moebius maps are unbranched.
    CHECK(PullbackMetric(RationalMap(poly({1.0, 2.0}), poly({-1.0, 1.0}))).singular_divisor().empty());
}

TEST_CASE("random maps satisfy Riemann-Hurwitz") {
    oracles::Rng rng(99);
    int built = 0;
    for (int trial = 0; trial < 40 && built < 25; ++trial) {
        int dn = 1 + int(rng.uniform(0.0, 4.0)), dd = int(rng.uniform(0.0, 4.0));
        std::vector<Complex> nc(static_cast<size_t>(dn) + 1), dc(static_cast<size_t>(dd) + 1);
        for (auto& x : nc) x = rng.disk(1.5);
        for (auto& x : dc) x = rng.disk(1.5);
        if (std::abs(nc.back()) < 0.3 || std::abs(dc.back()) < 0.3) continue;
        RationalMap f{Polynomial(std::move(nc)), Polynomial(std::move(dc))};
        if (f.degree() < 1) continue;
        // Construction asserts the Riemann-Hurwitz identity internally.
        PullbackMetric m(f);
        double rh = 0.0;
        for (const ConicalEntry& e : m.singular_divisor()) rh += e.alpha - 1.0;
        CHECK(rh == doctest::Approx(2.0 * f.degree() - 2.0));
        ++built;
    }
    CHECK(built >= 20);
}

TEST_CASE("area equals 4 pi deg and the Gauss-Bonnet count") {
    auto check_area = [](const RationalMap& f) {
        PullbackMetric m(f);
        double a = m.area(1e-8);
        CHECK(a == doctest::Approx(4.0 * pi * f.degree()).epsilon(1e-7));
        double degD = 0.0;
        for (const ConicalEntry& e : m.singular_divisor()) degD += e.alpha - 1.0;
        CHECK(a == doctest::Approx(2.0 * pi * (2.0 + degD)).epsilon(1e-7));
    };
    check_area(RationalMap(poly({0.0, 1.0}), Polynomial::one()));  // identity, 4 pi
    check_area(zpow(2));
    check_area(z2_over_z2m1());
    check_area(cubic_halved());
}

TEST_CASE("numeric curvature is 1 away from the critical points") {
    PullbackMetric m(z2_over_z2m1());
    CHECK(m.curvature(Complex(0.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(m.curvature(Complex(0.6, 0.6)) == doctest::Approx(1.0).epsilon(1e-4));
    PullbackMetric c(cubic_halved());
    CHECK(c.curvature(Complex(0.0, 0.4)) == doctest::Approx(1.0).epsilon(1e-4));

    // Too close to the critical point at the origin.
    CHECK_THROWS_AS(m.curvature(Complex(1e-4, 0.0)), std::domain_error);
}

TEST_CASE("metric density is invariant under rotations of the target sphere") {
    oracles::Rng rng(31337);
    RationalMap f = z2_over_z2m1();
    PullbackMetric base(f);
    for (int i = 0; i < 25; ++i) {
        SU2Moebius L = rng.su2();
        PullbackMetric rotated(su2_compose(L, f));
        for (int j = 0; j < 6; ++j) {
            Complex z = rng.disk(2.0);
            if (chordal_distance(SpherePoint::finite(z), SpherePoint::finite(Complex(0.0))) < 0.2)
                continue;
            double a = base.density(z), b = rotated.density(z);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(a, b));
        }
    }
}
