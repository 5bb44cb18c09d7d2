#pragma once

// Independent verification routes used by the tests.  Nothing here calls
// into the library paths it is meant to check: derivatives come from
// dual-number forward AD, Laurent coefficients from contour quadrature,
// resultants from a direct Sylvester determinant.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "curvone/polynomial.hpp"
#include "curvone/rational_map.hpp"

namespace oracles {

using curvone::Complex;

// First-order dual number over the complex field; evaluating a polynomial at
// (z, 1) yields (p(z), p'(z)) without touching the library derivative code.
struct Dual {
    Complex v{0.0};
    Complex d{0.0};
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
inline Dual operator/(Dual a, Dual b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}

inline Dual eval_poly(const curvone::Polynomial& p, Dual z) {
    Dual acc;
    for (int k = p.degree(); k >= 0; --k) acc = acc * z + Dual{p.coeff(k), Complex(0.0)};
    return acc;
}

// f'(z) by forward AD on the coprime representation.
inline Complex rational_derivative_ad(const curvone::RationalMap& f, Complex z) {
    Dual x{z, Complex(1.0)};
    return (eval_poly(f.num(), x) / eval_poly(f.den(), x)).d;
}

// Third-order jet (truncated Taylor) arithmetic: c[k] is the k-th Taylor
// coefficient at the expansion point, so f', f'', f''' are c[1], 2 c[2],
// 6 c[3].  Pointwise-stable route to higher derivatives of a quotient.
struct Jet3 {
    Complex c[4]{};
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
}
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j <= k; ++j) r.c[k] += a.c[j] * b.c[k - j];
    return r;
}
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
    Jet3 r;
    for (int k = 0; k < 4; ++k) {
        Complex s = a.c[k];
        for (int j = 0; j < k; ++j) s -= r.c[j] * b.c[k - j];
        r.c[k] = s / b.c[0];
    }
    return r;
}

inline Jet3 eval_poly(const curvone::Polynomial& p, const Jet3& z) {
    Jet3 acc;
    for (int k = p.degree(); k >= 0; --k) {
        Jet3 t;
        t.c[0] = p.coeff(k);
        acc = acc * z + t;
    }
    return acc;
}

// Jet of f at z; jet.c[0] is f(z).
inline Jet3 rational_jet(const curvone::RationalMap& f, Complex z) {
    Jet3 x;
    x.c[0] = z;
    x.c[1] = Complex(1.0);
    return eval_poly(f.num(), x) / eval_poly(f.den(), x);
}

// Laurent coefficient a_k of g about p (k may be negative) by trapezoid
// contour quadrature on |z - p| = radius; spectrally accurate for the
// analytic integrands used in the tests.
template <typename Fn>
Complex contour_coefficient(Fn&& g, Complex p, int k, double radius, int n = 1024) {
    Complex acc(0.0);
    for (int j = 0; j < n; ++j) {
        double th = 2.0 * std::numbers::pi * j / n;
        Complex w = radius * Complex(std::cos(th), std::sin(th));
        // dz = i w dtheta; divide by (z-p)^{k+1}.
        acc += g(p + w) * w / std::pow(w, k + 1);
    }
    return acc / double(n);
}

// Resultant of p and q as the Sylvester determinant; nonzero iff coprime.
inline Complex resultant(const curvone::Polynomial& p, const curvone::Polynomial& q) {
    const int m = p.degree(), n = q.degree();
    if (m < 0 || n < 0) return Complex(0.0);
    if (m == 0) return std::pow(p.coeff(0), n);
    if (n == 0) return std::pow(q.coeff(0), m);
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m + n, m + n);
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + (m - k)) = p.coeff(k);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + (n - k)) = q.coeff(k);
    return S.determinant();
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen);
    }
    Complex disk(double r) {
        while (true) {
            double x = uniform(-r, r), y = uniform(-r, r);
            if (x * x + y * y <= r * r) return {x, y};
        }
    }
    Complex gaussian() {
        std::normal_distribution<double> n(0.0, 1.0);
        return {n(gen), n(gen)};
    }
    curvone::SU2Moebius su2() {
        Complex a = gaussian(), b = gaussian();
        while (std::abs(a) + std::abs(b) < 1e-3) { a = gaussian(); b = gaussian(); }
        return curvone::SU2Moebius(a, b);
    }
    // Uniform point on the sphere, stereographically projected; may land
    // anywhere in the plane (or far out, standing in for infinity).
    curvone::Complex sphere_point() {
        double u = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 2.0 * std::numbers::pi);
        double s = std::sqrt(std::max(0.0, 1.0 - u * u));
        // z = (x + iy) / (1 - w) for (x, y, w) on the unit sphere.
        double denom = 1.0 - u;
        if (denom < 1e-9) denom = 1e-9;
        return {s * std::cos(phi) / denom, s * std::sin(phi) / denom};
    }
};

}  // namespace oracles
