#pragma once

#include <vector>

#include "curvone/rational_map.hpp"

namespace curvone {

// One conical point: cone angle 2*pi*alpha at the given point.  Entries with
// alpha = 1 are smooth and never stored.
struct ConicalEntry {
    SpherePoint point;
    double alpha = 1.0;
};

using ConicalDivisor = std::vector<ConicalEntry>;

// The pullback f* g_st of the round sphere metric along a non-constant
// rational map: a curvature-one metric with conical singularities at the
// critical points of f (cone angle 2*pi*(local degree)).
class PullbackMetric {
  public:
    explicit PullbackMetric(RationalMap f);

    const RationalMap& map() const { return f_; }

    // Conformal density 4 |f'|^2 / (1 + |f|^2)^2 at a finite point, computed
    // homogeneously as 4 |P'Q - PQ'|^2 / (|P|^2 + |Q|^2)^2, which is finite
    // and smooth across the poles of f; points with |z| > 1 are routed
    // through the chart at infinity.
    double density(Complex z) const;

    // Critical points of f with their integer cone angles alpha >= 2 (the
    // local degree); Riemann-Hurwitz sum checked: sum (alpha - 1) = 2 deg - 2.
    const ConicalDivisor& singular_divisor() const { return divisor_; }

    // Spherical area by two-chart adaptive tensor Gauss-Legendre quadrature
    // in polar coordinates; tol is relative.  Equals 4 pi deg f.
    double area(double tol = 1e-8) const;

    // Gauss curvature at z by a five-point Laplacian of log density with
    // step h; the point must stay at chordal distance >= 10 h from every
    // critical point.  Equals 1 up to O(h^2).
    double curvature(Complex z, double h = 1e-3) const;

  private:
    RationalMap f_;       // the developing map
    Polynomial w_;        // P'Q - PQ'
    RationalMap g_;       // f(1/w), the chart at infinity
    Polynomial wg_;       // numerator Wronskian of g
    ConicalDivisor divisor_;
};

}  // namespace curvone
