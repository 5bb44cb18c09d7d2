#include "curvone/schwarzian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "curvone/roots.hpp"

namespace curvone {

namespace {

constexpr double kMatchRadius = 1e-6;  // scaled by 1 + |z|
constexpr int kSampleCount = 8;

bool near(const Complex& a, const Complex& b) {
    return std::abs(a - b) <= kMatchRadius * (1.0 + std::abs(b));
}

// One double pole of the Schwarzian with its partial-fraction data.
struct PoleTerm {
    Complex p;
    double a;  // residue of d log / dz of W / Q^2, always an integer here
};

Complex eval_ratio(const RationalMap& f, Complex z) {
    return f.num().eval(z) / f.den().eval(z);
}

SchwarzianTail tail_at_finite(const RationalMap& S, Complex p0) {
    const Polynomial& N = S.num();
    const Polynomial& D = S.den();

    std::vector<RootCluster> poles;
    if (D.degree() >= 1) poles = poly_roots(D);

    int order = 0;
    Complex p = p0;
    std::vector<Complex> others;
    for (const RootCluster& rc : poles) {
        if (near(rc.root, p0)) {
            order = rc.multiplicity;
            p = rc.root;  // polished pole location
        } else {
            others.push_back(rc.root);
        }
    }
    if (order > 2) throw std::domain_error("irregular singularity");

    Complex c{0.0}, d{0.0};
    if (order > 0) {
        Complex rem;
        Polynomial d1 = D.deflate(p, rem);
        if (order == 2) {
            d1 = d1.deflate(p, rem);
            const Complex nv = N.eval(p), dv = d1.eval(p);
            c = nv / dv;
            d = (N.derivative().eval(p) * dv - nv * d1.derivative().eval(p)) / (dv * dv);
        } else {
            d = N.eval(p) / d1.eval(p);
        }
    }

    double r0 = 0.1 * (1.0 + std::abs(p));
    for (const Complex& q : others) r0 = std::min(r0, 0.1 * std::abs(p - q));

    SchwarzianTail tail;
    tail.center = SpherePoint::finite(p);
    tail.c = std::real(c);
    tail.d = d;
    for (int j = 0; j < kSampleCount; ++j) {
        const double th = 2.0 * std::numbers::pi * j / kSampleCount;
        const Complex x = r0 * Complex(std::cos(th), std::sin(th));
        Complex psi = eval_ratio(S, p + x);
        if (order == 2) psi -= c / (x * x);
        if (order >= 1) psi -= d / x;
        tail.regular_samples.emplace_back(x, psi);
    }
    return tail;
}

}  // namespace

RationalMap schwarzian(const RationalMap& f) {
    if (f.degree() < 1) throw std::domain_error("Schwarzian requires a non-constant map");

    const Polynomial w = f.wronskian_numerator();
    const Polynomial& den = f.den();

    // Log-derivative residues of W / Q^2: +m at an m-fold root of W, -2n at an
    // n-fold root of Q.  An n-fold pole of f is an (n-1)-fold root of W at the
    // same point, so the two contributions combine to -(n+1); at simple poles
    // the total is -2, and the quadratic and residue coefficients both vanish
    // exactly, so the point is dropped.
    std::vector<RootCluster> wroots;
    if (w.degree() >= 1) wroots = poly_roots(w);
    std::vector<RootCluster> qroots;
    if (den.degree() >= 1) qroots = poly_roots(den);

    std::vector<PoleTerm> poles;
    for (const RootCluster& q : qroots) {
        int m = 0;
        for (RootCluster& wr : wroots) {
            if (wr.multiplicity == 0 || !near(wr.root, q.root)) continue;
            m = wr.multiplicity;
            wr.multiplicity = 0;
        }
        if (m != q.multiplicity - 1)
            throw std::runtime_error("root clustering failure: pole/critical multiplicity mismatch");
        poles.push_back(PoleTerm{q.root, static_cast<double>(m - 2 * q.multiplicity)});
    }
    for (const RootCluster& wr : wroots)
        if (wr.multiplicity > 0) poles.push_back(PoleTerm{wr.root, static_cast<double>(wr.multiplicity)});

    // Silent (a = -2) points contribute nothing of their own - both their
    // coefficients vanish identically - but they do enter the residue sums of
    // every other point.
    std::vector<size_t> keep;
    for (size_t k = 0; k < poles.size(); ++k)
        if (poles[k].a != -2.0) keep.push_back(k);
    if (keep.empty()) return RationalMap(Polynomial{}, Polynomial::one());

    const size_t K = keep.size();
    std::vector<double> c(K);
    std::vector<Complex> d(K);
    for (size_t i = 0; i < K; ++i) {
        const PoleTerm& t = poles[keep[i]];
        c[i] = -t.a - 0.5 * t.a * t.a;
        Complex s{0.0};
        for (size_t l = 0; l < poles.size(); ++l)
            if (l != keep[i]) s += poles[l].a / (t.p - poles[l].p);
        d[i] = -t.a * s;
    }

    Polynomial denom = Polynomial::one();
    for (size_t i = 0; i < K; ++i) {
        const Polynomial lin{{-poles[keep[i]].p, Complex(1.0)}};
        denom = denom * lin * lin;
    }

    Polynomial numer;
    double scale = 0.0;
    for (size_t i = 0; i < K; ++i) {
        const Complex pi = poles[keep[i]].p;
        Polynomial part{{Complex(c[i]) - d[i] * pi, d[i]}};
        double bound = std::abs(c[i]) + std::abs(d[i]) * (1.0 + std::abs(pi));
        for (size_t l = 0; l < K; ++l) {
            if (l == i) continue;
            const Complex pl = poles[keep[l]].p;
            const Polynomial lin{{-pl, Complex(1.0)}};
            part = part * lin * lin;
            const double b = 1.0 + std::abs(pl);
            bound *= b * b;
        }
        numer = numer + part;
        scale += bound;
    }

    // Leading coefficients that theory forces to zero cancel in the sum; sweep
    // the roundoff remnants so the degree (hence the behaviour at infinity) is
    // exact.
    numer = numer.trimmed_leading(1e-10 * scale);
    return RationalMap(numer, denom);
}

SchwarzianTail laurent_tail(const RationalMap& S, const SpherePoint& p) {
    if (!p.at_infinity) return tail_at_finite(S, p.value);

    // Transport to the chart w = 1/z: the Schwarzian there is S(1/w) / w^4.
    const Polynomial& N = S.num();
    const Polynomial& D = S.den();
    const int k = std::max(N.degree(), D.degree());
    const Polynomial w4 = Polynomial::monomial(Complex(1.0), 4);
    RationalMap tilde = N.is_zero() ? RationalMap(Polynomial{}, Polynomial::one())
                                    : RationalMap(N.reversed(k), D.reversed(k) * w4);
    SchwarzianTail tail = tail_at_finite(tilde, Complex(0.0));
    tail.center = SpherePoint::infinity();
    return tail;
}

double weight_to_angle(double c) {
    if (c >= 0.5) throw std::domain_error("no positive angle");
    return std::sqrt(1.0 - 2.0 * c);
}

}  // namespace curvone
