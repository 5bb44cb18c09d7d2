#pragma once

#include <vector>

#include "curvone/complex_sphere.hpp"
#include "curvone/polynomial.hpp"
#include "curvone/roots.hpp"

namespace curvone {

// Rational self-map of the Riemann sphere in lowest terms.  Canonical form:
// numerator and denominator coprime (no common root within the clustering
// tolerance) and the denominator monic.  The zero map is allowed (numerator
// zero, denominator 1); contexts that need a developing map enforce
// degree >= 1 themselves.
class RationalMap {
  public:
    RationalMap() : num_(Polynomial::zero()), den_(Polynomial::one()) {}
    // Reduces to lowest terms: common roots are detected by a singular-value
    // gate on the Sylvester matrix (threshold 1e-10) and divided out by
    // matched root deflation.
    RationalMap(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }

    // Degree as a self-map of the sphere: max(deg num, deg den), of a
    // constant 0.
    int degree() const;
    bool is_constant() const { return degree() == 0; }

    SpherePoint eval(const SpherePoint& p) const;
    SpherePoint eval(Complex z) const { return eval(SpherePoint::finite(z)); }

    // Derivative as a reduced rational map: (P'Q - PQ') / Q^2.
    RationalMap derivative() const;

    // P'Q - PQ', unreduced apart from sweeping roundoff-level leading
    // coefficients.  Its roots are the finite critical points of the map
    // (local degree = multiplicity + 1); degree <= deg P + deg Q - 1 and
    // <= 2 deg - 2 when both have full degree.
    Polynomial wronskian_numerator() const;

    // The map w -> f(1/w), reduced; carries the point at infinity to the
    // chart origin.
    RationalMap infinity_chart() const;

  private:
    Polynomial num_, den_;
};

// Rotation of the sphere: w -> (a w + b) / (-conj(b) w + conj(a)) with
// |a|^2 + |b|^2 = 1 (normalized at construction).
struct SU2Moebius {
    Complex a{1.0, 0.0};
    Complex b{0.0, 0.0};

    SU2Moebius() = default;
    SU2Moebius(Complex a_, Complex b_);

    SpherePoint apply(const SpherePoint& p) const;
};

// Post-composition L o f as a reduced rational map of the same degree.
RationalMap su2_compose(const SU2Moebius& L, const RationalMap& f);

// General PGL(2) post-composition (a f + b) / (c f + d); ad - bc must be
// nonzero.
RationalMap mobius_postcompose(Complex a, Complex b, Complex c, Complex d, const RationalMap& f);

// Precomposition f o h with the Moebius map h(z) = (a z + b) / (c z + d).
RationalMap mobius_precompose(const RationalMap& f, Complex a, Complex b, Complex c, Complex d);

}  // namespace curvone
