#include "curvone/rational_map.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace curvone {

namespace {

constexpr double kSylvesterThreshold = 1e-10;
constexpr double kMatchRadius = 1e-6;  // root pairing radius, scaled by 1 + |z|

// Smallest/largest singular value ratio of the Sylvester matrix of p and q;
// a (near-)common root drives it to zero.
bool sylvester_coprime(const Polynomial& p, const Polynomial& q) {
    const int m = p.degree(), n = q.degree();
    if (m < 1 || n < 1) return true;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(m + n, m + n);
    const double ps = p.max_coeff(), qs = q.max_coeff();
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(r, r + (m - k)) = p.coeff(k) / ps;
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(n + r, r + (n - k)) = q.coeff(k) / qs;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
    const auto& sv = svd.singularValues();
    return sv(sv.size() - 1) > kSylvesterThreshold * sv(0);
}

size_t origin_root_count(const Polynomial& p) {
    if (p.is_zero()) return 0;
    const double mc = p.max_coeff();
    size_t k = 0;
    while (k + 1 < p.coeffs().size() && std::abs(p.coeff(static_cast<int>(k))) <= 1e-14 * mc) ++k;
    return k;
}

Polynomial strip_origin(const Polynomial& p, size_t k) {
    std::vector<Complex> c(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end());
    return Polynomial(std::move(c));
}

}  // namespace

RationalMap::RationalMap(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("rational map with zero denominator");
    if (num_.is_zero()) {
        den_ = Polynomial::one();
        return;
    }

    // Common z^k factor at the origin.
    size_t k = std::min(origin_root_count(num_), origin_root_count(den_));
    if (k > 0) {
        num_ = strip_origin(num_, k);
        den_ = strip_origin(den_, k);
    }

    // SVD gate first; the root matching below only runs when a common factor
    // is actually present.
    for (int pass = 0; pass < 4 && !sylvester_coprime(num_, den_); ++pass) {
        std::vector<RootCluster> rn = poly_roots(num_);
        std::vector<RootCluster> rd = poly_roots(den_);
        bool removed = false;
        for (RootCluster& dn : rd) {
            for (RootCluster& nm : rn) {
                if (nm.multiplicity == 0 || dn.multiplicity == 0) continue;
                if (std::abs(nm.root - dn.root) > kMatchRadius * (1.0 + std::abs(dn.root)))
                    continue;
                int common = std::min(nm.multiplicity, dn.multiplicity);
                Complex rem;
                for (int i = 0; i < common; ++i) {
                    num_ = num_.deflate(nm.root, rem);
                    den_ = den_.deflate(dn.root, rem);
                }
                nm.multiplicity -= common;
                dn.multiplicity -= common;
                removed = true;
            }
        }
        if (!removed) break;
    }

    num_ = (1.0 / den_.leading()) * num_;
    den_ = (1.0 / den_.leading()) * den_;
}

int RationalMap::degree() const { return std::max({num_.degree(), den_.degree(), 0}); }

SpherePoint RationalMap::eval(const SpherePoint& p) const {
    if (p.at_infinity) {
        const int dn = num_.degree(), dd = den_.degree();
        if (dn > dd) return SpherePoint::infinity();
        if (dn < dd) return SpherePoint::finite(Complex(0.0));
        return SpherePoint::finite(num_.leading() / den_.leading());
    }
    const Complex z = p.value;
    const Complex pv = num_.eval(z), qv = den_.eval(z);
    if (std::abs(qv) <= 1e-13 * den_.scaled_norm(std::abs(z))) {
        if (!num_.is_zero() && std::abs(pv) <= 1e-13 * num_.scaled_norm(std::abs(z)))
            throw std::runtime_error("rational map indeterminate at evaluation point");
        return SpherePoint::infinity();
    }
    return SpherePoint::finite(pv / qv);
}

Polynomial RationalMap::wronskian_numerator() const {
    Polynomial w = num_.derivative() * den_ - num_ * den_.derivative();
    // Whenever infinity is a critical point the top coefficients cancel
    // exactly; their roundoff remnants would read as spurious far-out roots.
    return w.trimmed_leading(1e-12 * num_.max_coeff() * den_.max_coeff());
}

RationalMap RationalMap::derivative() const {
    return RationalMap(wronskian_numerator(), den_ * den_);
}

RationalMap RationalMap::infinity_chart() const {
    const int k = std::max(num_.degree(), den_.degree());
    return RationalMap(num_.reversed(k), den_.reversed(k));
}

SU2Moebius::SU2Moebius(Complex a_, Complex b_) : a(a_), b(b_) {
    double n = std::sqrt(std::norm(a) + std::norm(b));
    if (n < 1e-14) throw std::domain_error("degenerate SU(2) element");
    a /= n;
    b /= n;
}

SpherePoint SU2Moebius::apply(const SpherePoint& p) const {
    if (p.at_infinity) {
        if (std::abs(b) == 0.0) return SpherePoint::infinity();
        return SpherePoint::finite(a / -std::conj(b));
    }
    const Complex w = p.value;
    const Complex den = -std::conj(b) * w + std::conj(a);
    const Complex num = a * w + b;
    if (std::abs(den) <= 1e-15 * (std::abs(w) + 1.0)) return SpherePoint::infinity();
    return SpherePoint::finite(num / den);
}

RationalMap mobius_postcompose(Complex a, Complex b, Complex c, Complex d, const RationalMap& f) {
    if (std::abs(a * d - b * c) < 1e-14) throw std::domain_error("singular Moebius coefficients");
    return RationalMap(a * f.num() + b * f.den(), c * f.num() + d * f.den());
}

RationalMap su2_compose(const SU2Moebius& L, const RationalMap& f) {
    return mobius_postcompose(L.a, L.b, -std::conj(L.b), std::conj(L.a), f);
}

RationalMap mobius_precompose(const RationalMap& f, Complex a, Complex b, Complex c, Complex d) {
    if (std::abs(a * d - b * c) < 1e-14) throw std::domain_error("singular Moebius coefficients");
    const Polynomial top{std::vector<Complex>{b, a}};
    const Polynomial bot{std::vector<Complex>{d, c}};
    const int K = std::max(f.num().degree(), f.den().degree());
    // P(h(z)) * bot^K expanded via precomputed powers of top and bot.
    std::vector<Polynomial> tp(static_cast<size_t>(K) + 1, Polynomial::one());
    std::vector<Polynomial> bp(static_cast<size_t>(K) + 1, Polynomial::one());
    for (int i = 1; i <= K; ++i) {
        tp[static_cast<size_t>(i)] = tp[static_cast<size_t>(i - 1)] * top;
        bp[static_cast<size_t>(i)] = bp[static_cast<size_t>(i - 1)] * bot;
    }
    auto substitute = [&](const Polynomial& p) {
        Polynomial acc;
        for (int k = 0; k <= p.degree(); ++k)
            acc += p.coeff(k) * (tp[static_cast<size_t>(k)] * bp[static_cast<size_t>(K - k)]);
        return acc;
    };
    return RationalMap(substitute(f.num()), substitute(f.den()));
}

}  // namespace curvone
