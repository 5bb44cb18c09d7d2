#pragma once

#include <utility>
#include <vector>

#include "curvone/rational_map.hpp"

namespace curvone {

// Quadratic and residue part of a Schwarzian at one singular point, plus
// evaluated samples of the remaining regular part:
//   S(center + x) = c / x^2 + d / x + psi(x)
// in the local coordinate x (x = z - center at a finite center, x = the
// chart coordinate w at infinity, where the transported Schwarzian is
// S(1/w) / w^4).  regular_samples holds (x_j, psi(x_j)) on a small circle
// around the center, enough to interpolate psi to order 7.
struct SchwarzianTail {
    SpherePoint center;
    double c = 0.0;
    Complex d{0.0};
    std::vector<std::pair<Complex, Complex>> regular_samples;
};

// Schwarzian derivative f'''/f' - (3/2)(f''/f')^2 of a non-constant rational
// map, as a reduced rational map.  Assembled from partial fractions: every
// critical point of local degree n carries the double-pole term
// (1 - n^2) / (2 (z - p)^2), and post-composing with any Moebius map leaves
// the result unchanged (Moebius maps themselves give the zero map).
RationalMap schwarzian(const RationalMap& f);

// Laurent data of a rational S at p.  Pole order at most 2; a regular point
// yields c = d = 0 by convention; order > 2 is rejected as an irregular
// singularity.
SchwarzianTail laurent_tail(const RationalMap& S, const SpherePoint& p);

// Cone angle alpha = sqrt(1 - 2c) from the quadratic weight c = (1-alpha^2)/2;
// requires c < 1/2.
double weight_to_angle(double c);

}  // namespace curvone
