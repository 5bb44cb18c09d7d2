#include "curvone/character.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "curvone/quadrature.hpp"
#include "curvone/roots.hpp"

namespace curvone {

namespace {

constexpr double kResidueFloor = 1e-12;
constexpr double kPointMatch = 1e-9;     // scaled by 1 + |q|
constexpr double kClearance = 1e-3;      // chordal clearance of paths from poles
constexpr double kIntegerTol = 1e-9;
constexpr double kDevelopTol = 1e-10;    // total quadrature budget per path

bool same_point(const SpherePoint& a, const SpherePoint& b) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity && b.at_infinity;
    return std::abs(a.value - b.value) <= kPointMatch * (1.0 + std::abs(b.value));
}

// Segments of the polyline, including the implicit closing edge.
std::vector<std::pair<Complex, Complex>> path_segments(const PathPolyline& path) {
    if (path.vertices.empty()) throw std::domain_error("empty path");
    std::vector<std::pair<Complex, Complex>> segs;
    for (size_t i = 0; i + 1 < path.vertices.size(); ++i)
        segs.emplace_back(path.vertices[i], path.vertices[i + 1]);
    if (path.closed) {
        const Complex a = path.vertices.back(), b = path.vertices.front();
        if (std::abs(a - b) > 1e-12 * (1.0 + std::abs(b))) segs.emplace_back(a, b);
    }
    return segs;
}

// Chordal clearance of a segment from one pole; for a finite pole measured at
// the euclidean-nearest point of the segment, for infinity at the outermost
// endpoint.
double segment_clearance(Complex a, Complex b, const SpherePoint& q) {
    if (q.at_infinity) {
        const double m = std::max(std::abs(a), std::abs(b));
        return 2.0 / std::sqrt(1.0 + m * m);
    }
    const Complex d = b - a;
    const double len2 = std::norm(d);
    double t = 0.0;
    if (len2 > 0.0) t = std::clamp(((q.value - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    const Complex nearest = a + t * d;
    return chordal_distance(SpherePoint::finite(nearest), q);
}

void check_clearance(const ThirdKindDifferential& w,
                     const std::vector<std::pair<Complex, Complex>>& segs) {
    for (size_t i = 0; i < segs.size(); ++i) {
        for (const FormPole& p : w.poles()) {
            if (segment_clearance(segs[i].first, segs[i].second, p.point) < kClearance) {
                std::ostringstream msg;
                msg << "path too close to a pole on segment " << i;
                throw std::domain_error(msg.str());
            }
        }
    }
}

// Adaptive quadrature of omega over the segments.
Complex integrate_path(const ThirdKindDifferential& w,
                       const std::vector<std::pair<Complex, Complex>>& segs) {
    const double tol = kDevelopTol / static_cast<double>(std::max<size_t>(segs.size(), 1));
    Complex total(0.0);
    for (const auto& [a, b] : segs) {
        if (std::abs(b - a) == 0.0) continue;
        const Complex d = b - a;
        total += adaptive_gk([&](double t) { return d * w.eval(a + t * d); }, 0.0, 1.0, tol);
    }
    return total;
}

void append_conical(ConicalDivisor& divisor, const SpherePoint& p, double alpha) {
    if (std::abs(alpha - 1.0) <= kIntegerTol) return;  // smooth point
    divisor.push_back(ConicalEntry{p, alpha});
}

}  // namespace

const char* psi_kind_name(PsiKind k) {
    switch (k) {
        case PsiKind::Saddle: return "saddle";
        case PsiKind::Min: return "min";
        case PsiKind::Max: return "max";
        case PsiKind::SmoothMin: return "smooth-min";
        case PsiKind::SmoothMax: return "smooth-max";
    }
    return "?";
}

ThirdKindDifferential::ThirdKindDifferential(std::vector<FormPole> poles) {
    if (poles.size() < 2) throw std::domain_error("third-kind differential needs at least two poles");
    for (const FormPole& p : poles)
        if (std::abs(p.residue) <= kResidueFloor) throw std::domain_error("pole is not 3rd-kind");
    for (size_t i = 0; i < poles.size(); ++i)
        for (size_t j = i + 1; j < poles.size(); ++j)
            if (same_point(poles[i].point, poles[j].point))
                throw std::domain_error("pole points must be distinct");

    double finite_sum = 0.0, listed_inf = 0.0, scale = 0.0;
    for (const FormPole& p : poles) {
        scale += std::abs(p.residue);
        if (p.point.at_infinity) {
            inf_pole_ = true;
            listed_inf = p.residue;
        } else {
            finite_sum += p.residue;
        }
    }
    const double expected_inf = inf_pole_ ? listed_inf : 0.0;
    if (std::abs(finite_sum + expected_inf) > 1e-12 * std::max(1.0, scale))
        throw std::domain_error("violates residue theorem");
    inf_residue_ = -finite_sum;

    std::sort(poles.begin(), poles.end(), [](const FormPole& a, const FormPole& b) {
        if (a.point.at_infinity != b.point.at_infinity) return b.point.at_infinity;
        if (a.point.value.real() != b.point.value.real())
            return a.point.value.real() < b.point.value.real();
        return a.point.value.imag() < b.point.value.imag();
    });
    poles_ = std::move(poles);

    // num/den of the finite part; when infinity is not a pole the leading
    // numerator coefficients cancel exactly and their roundoff is swept.
    den_ = Polynomial::one();
    for (const FormPole& p : poles_)
        if (!p.point.at_infinity) den_ *= Polynomial{{-p.point.value, Complex(1.0)}};
    num_ = Polynomial::zero();
    double num_scale = 0.0;
    for (const FormPole& p : poles_) {
        if (p.point.at_infinity) continue;
        Polynomial part(Complex(p.residue));
        double bound = std::abs(p.residue);
        for (const FormPole& o : poles_) {
            if (o.point.at_infinity || same_point(o.point, p.point)) continue;
            part *= Polynomial{{-o.point.value, Complex(1.0)}};
            bound *= 1.0 + std::abs(o.point.value);
        }
        num_ += part;
        num_scale += bound;
    }
    num_ = num_.trimmed_leading(1e-12 * num_scale);
}

ThirdKindDifferential make_differential(std::vector<FormPole> poles) {
    return ThirdKindDifferential(std::move(poles));
}

ThirdKindDifferential logarithmic_differential(const RationalMap& f) {
    if (f.degree() < 1)
        throw std::domain_error("logarithmic differential requires a non-constant map");
    std::vector<FormPole> poles;
    if (f.num().degree() >= 1)
        for (const RootCluster& r : poly_roots(f.num()))
            poles.push_back(FormPole{SpherePoint::finite(r.root), double(r.multiplicity)});
    if (f.den().degree() >= 1)
        for (const RootCluster& r : poly_roots(f.den()))
            poles.push_back(FormPole{SpherePoint::finite(r.root), -double(r.multiplicity)});
    const int inf = f.den().degree() - f.num().degree();
    if (inf != 0) poles.push_back(FormPole{SpherePoint::infinity(), double(inf)});
    return ThirdKindDifferential(std::move(poles));
}

FormDivisor differential_divisor(const ThirdKindDifferential& w) {
    FormDivisor div;
    for (const FormPole& p : w.poles()) div.poles.push_back(p.point);

    int zero_total = 0;
    if (w.num().degree() >= 1) {
        for (const RootCluster& r : poly_roots(w.num())) {
            div.zeros.push_back(FormZero{SpherePoint::finite(r.root), r.multiplicity});
            zero_total += r.multiplicity;
        }
    }
    const int ord_inf = w.den().degree() - w.num().degree() - 2;
    if (ord_inf >= 1) {
        div.zeros.push_back(FormZero{SpherePoint::infinity(), ord_inf});
        zero_total += ord_inf;
    }

    const bool inf_is_pole = ord_inf == -1;
    if (inf_is_pole != w.has_infinity_pole() ||
        zero_total - static_cast<int>(div.poles.size()) != -2)
        throw std::runtime_error("root clustering failure: differential divisor degree");
    return div;
}

bool is_real_part_exact(const ThirdKindDifferential& w) {
    for (const FormPole& p : w.poles())
        if (!std::isfinite(p.residue)) return false;
    return true;
}

bool is_trivial(const ThirdKindDifferential& w) {
    for (const FormPole& p : w.poles())
        if (std::abs(p.residue - std::round(p.residue)) > kIntegerTol) return false;
    return true;
}

AbelianMetricDescriptor build_metric(const ThirdKindDifferential& w) {
    const FormDivisor fd = differential_divisor(w);

    ConicalDivisor divisor;
    std::vector<ClassifiedPoint> classification;
    double residue_sum = 0.0;
    for (const FormPole& p : w.poles()) {
        residue_sum += std::abs(p.residue);
        append_conical(divisor, p.point, std::abs(p.residue));
        const bool smooth = std::abs(std::abs(p.residue) - 1.0) <= kIntegerTol;
        PsiKind kind = p.residue > 0 ? (smooth ? PsiKind::SmoothMin : PsiKind::Min)
                                     : (smooth ? PsiKind::SmoothMax : PsiKind::Max);
        classification.push_back(ClassifiedPoint{p.point, kind});
    }
    for (const FormZero& z : fd.zeros) {
        append_conical(divisor, z.point, double(z.order + 1));
        classification.push_back(ClassifiedPoint{z.point, PsiKind::Saddle});
    }

    // Canonical order: finite entries by coordinate, infinity last.
    auto before = [](const SpherePoint& a, const SpherePoint& b) {
        if (a.at_infinity != b.at_infinity) return b.at_infinity;
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    };
    std::sort(divisor.begin(), divisor.end(),
              [&](const ConicalEntry& a, const ConicalEntry& b) { return before(a.point, b.point); });
    std::sort(classification.begin(), classification.end(),
              [&](const ClassifiedPoint& a, const ClassifiedPoint& b) { return before(a.point, b.point); });

    return AbelianMetricDescriptor{w, std::move(divisor), is_trivial(w),
                                   2.0 * std::numbers::pi * residue_sum, std::move(classification)};
}

Complex develop(const ThirdKindDifferential& w, Complex basepoint, const PathPolyline& path) {
    if (path.vertices.empty()) throw std::domain_error("empty path");
    if (std::abs(path.vertices.front() - basepoint) > 1e-12 * (1.0 + std::abs(basepoint)))
        throw std::domain_error("path does not start at the basepoint");
    const auto segs = path_segments(path);
    check_clearance(w, segs);
    return std::exp(integrate_path(w, segs));
}

Complex monodromy_multiplier(const ThirdKindDifferential& w, const PathPolyline& loop) {
    if (loop.vertices.size() < 2) throw std::domain_error("monodromy requires a closed loop");
    if (!loop.closed &&
        std::abs(loop.vertices.front() - loop.vertices.back()) >
            1e-12 * (1.0 + std::abs(loop.vertices.front())))
        throw std::domain_error("monodromy requires a closed loop");
    const auto segs = path_segments(loop);
    check_clearance(w, segs);

    double winding_residues = 0.0;
    for (const FormPole& p : w.poles())
        if (!p.point.at_infinity)
            winding_residues += winding_number(loop, p.point.value) * p.residue;
    const Complex by_winding =
        std::exp(Complex(0.0, 2.0 * std::numbers::pi * winding_residues));
    const Complex by_quadrature = std::exp(integrate_path(w, segs));

    if (std::abs(by_winding - by_quadrature) > 1e-9 * (1.0 + std::abs(by_winding)))
        throw std::runtime_error("monodromy mismatch between quadrature and winding routes");
    return by_winding;
}

std::vector<DualFieldEntry> dual_field_orders(const ThirdKindDifferential& w) {
    const FormDivisor fd = differential_divisor(w);
    std::vector<DualFieldEntry> out;
    for (const SpherePoint& p : fd.poles) out.push_back(DualFieldEntry{p, false, 1});
    for (const FormZero& z : fd.zeros) out.push_back(DualFieldEntry{z.point, true, z.order});
    return out;
}

PsiKind psi_classify(const ThirdKindDifferential& w, const SpherePoint& p) {
    for (const FormPole& fp : w.poles())
        if (same_point(p, fp.point)) return fp.residue > 0 ? PsiKind::Min : PsiKind::Max;
    for (const FormZero& z : differential_divisor(w).zeros)
        if (same_point(p, z.point)) return PsiKind::Saddle;
    throw std::domain_error("ordinary point");
}

RationalMap reconstruct_rational(const ThirdKindDifferential& w) {
    if (!is_trivial(w)) throw std::domain_error("monodromy obstruction: residues not integers");
    Polynomial num = Polynomial::one(), den = Polynomial::one();
    for (const FormPole& p : w.poles()) {
        if (p.point.at_infinity) continue;
        const long n = std::lround(p.residue);
        const Polynomial lin{{-p.point.value, Complex(1.0)}};
        for (long i = 0; i < std::labs(n); ++i) (n > 0 ? num : den) *= lin;
    }
    return RationalMap(num, den);
}

double psi_value(const ThirdKindDifferential& w, Complex basepoint, const PathPolyline& path) {
    const double F = std::norm(develop(w, basepoint, path));
    if (F > 1.0) return 4.0 / (1.0 / F + 1.0);
    return 4.0 * F / (1.0 + F);
}

int winding_number(const PathPolyline& loop, Complex q) {
    int wind = 0;
    auto cross = [](Complex u, Complex v) {
        return u.real() * v.imag() - u.imag() * v.real();
    };
    for (const auto& [a, b] : path_segments(loop)) {
        // Half-open crossing rule: equivalent to rotating the ray from q
        // infinitesimally counterclockwise, so vertices on the ray never
        // count twice.
        if (a.imag() <= q.imag()) {
            if (b.imag() > q.imag() && cross(b - a, q - a) > 0.0) ++wind;
        } else if (b.imag() <= q.imag() && cross(b - a, q - a) < 0.0) {
            --wind;
        }
    }
    return wind;
}

}  // namespace curvone
