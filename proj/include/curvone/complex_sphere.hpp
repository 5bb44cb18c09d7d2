#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace curvone {

using Complex = std::complex<double>;

// A point on the Riemann sphere: either a finite complex number or the
// point at infinity.  The finite value is meaningless when at_infinity.
struct SpherePoint {
    Complex value{0.0, 0.0};
    bool at_infinity = false;

    static SpherePoint infinity() { return SpherePoint{Complex(0.0, 0.0), true}; }
    static SpherePoint finite(Complex z) { return SpherePoint{z, false}; }

    bool is_finite() const { return !at_infinity; }
};

inline bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
    return a.value == b.value;
}

// Chordal (Fubini-Study) distance, diameter 2.  This is the metric used for
// every point comparison so that infinity is an ordinary point.
inline double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_infinity && b.at_infinity) return 0.0;
    if (a.at_infinity) return 2.0 / std::sqrt(1.0 + std::norm(b.value));
    if (b.at_infinity) return 2.0 / std::sqrt(1.0 + std::norm(a.value));
    return 2.0 * std::abs(a.value - b.value) /
           std::sqrt((1.0 + std::norm(a.value)) * (1.0 + std::norm(b.value)));
}

inline double chordal_distance(Complex a, Complex b) {
    return chordal_distance(SpherePoint::finite(a), SpherePoint::finite(b));
}

inline std::string sphere_point_str(const SpherePoint& p) {
    if (p.at_infinity) return "inf";
    return "(" + std::to_string(p.value.real()) + ", " + std::to_string(p.value.imag()) + ")";
}

}  // namespace curvone
