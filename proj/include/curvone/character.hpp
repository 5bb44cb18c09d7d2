#pragma once

#include <vector>

#include "curvone/pullback.hpp"
#include "curvone/rational_map.hpp"

namespace curvone {

// Abelian differential of the third kind on the sphere: simple poles only,
// all residues real and nonzero, residues summing to zero over the whole
// sphere.  omega = sum of r_k dz/(z - q_k) over the finite poles; a pole at
// infinity, when listed, must carry exactly minus the sum of the finite
// residues, and when absent the finite residues must balance on their own.
struct FormPole {
    SpherePoint point;
    double residue;
};

class ThirdKindDifferential {
  public:
    // Validates and canonicalizes (finite poles sorted, infinity last).
    explicit ThirdKindDifferential(std::vector<FormPole> poles);

    // All poles in canonical order, the infinity entry (if any) last.
    const std::vector<FormPole>& poles() const { return poles_; }
    bool has_infinity_pole() const { return inf_pole_; }
    // Residue at infinity: minus the finite sum (zero when infinity is not a
    // pole).
    double infinity_residue() const { return inf_residue_; }

    // omega = num/den dz over the finite chart; den = prod (z - q_k), num of
    // degree at most #finite - 1 with exact leading cancellation when
    // infinity is not a pole.
    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    Complex eval(Complex z) const { return num_.eval(z) / den_.eval(z); }

  private:
    std::vector<FormPole> poles_;  // canonical order
    bool inf_pole_ = false;
    double inf_residue_ = 0.0;
    Polynomial num_, den_;
};

struct FormZero {
    SpherePoint point;
    int order;
};

// Divisor of omega: zeros with orders, simple poles; total degree -2.
struct FormDivisor {
    std::vector<FormZero> zeros;
    std::vector<SpherePoint> poles;
};

enum class PsiKind { Saddle, Min, Max, SmoothMin, SmoothMax };
const char* psi_kind_name(PsiKind k);

struct ClassifiedPoint {
    SpherePoint point;
    PsiKind kind;
};

// Spherical metric data built from omega: conical divisor, triviality of the
// monodromy character, total area, and the critical-point classification of
// Psi = 4|f|^2 / (1 + |f|^2).
struct AbelianMetricDescriptor {
    ThirdKindDifferential omega;
    ConicalDivisor divisor;
    bool trivial;
    double area;
    std::vector<ClassifiedPoint> classification;
};

// Piecewise-linear integration path; a closed path may either repeat the
// first vertex or set the flag (an implicit closing segment is added).
struct PathPolyline {
    std::vector<Complex> vertices;
    bool closed = false;
};

struct DualFieldEntry {
    SpherePoint point;
    bool pole;  // false: zero of the dual field
    int order;
};

ThirdKindDifferential make_differential(std::vector<FormPole> poles);

// d(log f) = df/f: poles at the zeros and poles of f with residues given by
// the orders (positive at zeros), plus deg den - deg num at infinity.
ThirdKindDifferential logarithmic_differential(const RationalMap& f);

FormDivisor differential_divisor(const ThirdKindDifferential& w);

// Real part exact: on the sphere this is the statement that all residues are
// real, which the representation enforces; rechecked here.
bool is_real_part_exact(const ThirdKindDifferential& w);

// Trivial monodromy character: every residue an integer (within 1e-9).
bool is_trivial(const ThirdKindDifferential& w);

AbelianMetricDescriptor build_metric(const ThirdKindDifferential& w);

// exp(int omega) along the path, normalized so the basepoint maps to 1.  The
// path must start at the basepoint and keep chordal clearance 1e-3 from every
// pole.
Complex develop(const ThirdKindDifferential& w, Complex basepoint, const PathPolyline& path);

// exp of the loop period, cross-checked against the combinatorial route
// exp(2 pi i * sum of winding * residue); the loop must be closed.
Complex monodromy_multiplier(const ThirdKindDifferential& w, const PathPolyline& loop);

// Divisor of the dual vector field Y = 1/omega: simple zeros at the poles of
// omega, poles matching the zero orders of omega.
std::vector<DualFieldEntry> dual_field_orders(const ThirdKindDifferential& w);

// Min / Max at poles of omega by residue sign, Saddle at its zeros; any
// other point is rejected as ordinary.
PsiKind psi_classify(const ThirdKindDifferential& w, const SpherePoint& p);

// For trivial omega: the rational map f = prod (z - q_k)^{r_k} with
// d(log f) = omega.
RationalMap reconstruct_rational(const ThirdKindDifferential& w);

// Psi = 4|f|^2/(1+|f|^2) at the path endpoint, f normalized at the basepoint.
double psi_value(const ThirdKindDifferential& w, Complex basepoint, const PathPolyline& path);

// Winding number of the (implicitly closed) polyline around q, by signed ray
// crossings; ties broken as an infinitesimal positive rotation of the ray.
int winding_number(const PathPolyline& loop, Complex q);

}  // namespace curvone
