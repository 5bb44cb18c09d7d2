#include "curvone/pullback.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "curvone/quadrature.hpp"

namespace curvone {

namespace {

double density_direct(const Polynomial& num, const Polynomial& den, const Polynomial& w,
                      Complex z) {
    const double wn = std::norm(w.eval(z));
    const double hn = std::norm(num.eval(z)) + std::norm(den.eval(z));
    return 4.0 * wn / (hn * hn);
}

}  // namespace

PullbackMetric::PullbackMetric(RationalMap f) : f_(std::move(f)) {
    if (f_.degree() < 1) throw std::domain_error("developing map must be non-constant");
    w_ = f_.wronskian_numerator();
    g_ = f_.infinity_chart();
    wg_ = g_.wronskian_numerator();

    // Finite critical points: roots of W with local degree multiplicity + 1.
    if (!w_.is_zero() && w_.degree() >= 1) {
        for (const RootCluster& rc : poly_roots(w_))
            divisor_.push_back(ConicalEntry{SpherePoint::finite(rc.root), double(rc.multiplicity + 1)});
    } else if (w_.is_zero()) {
        throw std::runtime_error("degenerate map: identically vanishing derivative");
    }
    // Critical point at infinity: vanishing order of the chart Wronskian at 0.
    {
        const double mc = wg_.max_coeff();
        int m = 0;
        while (m < wg_.degree() + 1 && std::abs(wg_.coeff(m)) <= 1e-12 * mc) ++m;
        if (m >= wg_.degree() + 1)
            throw std::runtime_error("degenerate chart: identically vanishing derivative");
        if (m >= 1) divisor_.push_back(ConicalEntry{SpherePoint::infinity(), double(m + 1)});
    }

    double rh = 0.0;
    for (const ConicalEntry& e : divisor_) rh += e.alpha - 1.0;
    const double expected = 2.0 * f_.degree() - 2.0;
    if (std::abs(rh - expected) > 1e-9) {
        std::ostringstream msg;
        msg << "root clustering failure: Riemann-Hurwitz sum " << rh << " != " << expected;
        throw std::runtime_error(msg.str());
    }
}

double PullbackMetric::density(Complex z) const {
    if (std::abs(z) <= 1.0) return density_direct(f_.num(), f_.den(), w_, z);
    const Complex w = 1.0 / z;
    const double q = std::norm(w);  // |w|^2
    return density_direct(g_.num(), g_.den(), wg_, w) * q * q;
}

double PullbackMetric::area(double tol) const {
    const double target = 4.0 * std::numbers::pi * f_.degree();
    const double tol_abs = 0.5 * tol * target;
    auto chart = [&](const Polynomial& num, const Polynomial& den, const Polynomial& w) {
        return adaptive_panel(
            [&](double r, double th) {
                const Complex z = r * Complex(std::cos(th), std::sin(th));
                return density_direct(num, den, w, z) * r;
            },
            0.0, 1.0, 0.0, 2.0 * std::numbers::pi, tol_abs);
    };
    return chart(f_.num(), f_.den(), w_) + chart(g_.num(), g_.den(), wg_);
}

double PullbackMetric::curvature(Complex z, double h) const {
    const SpherePoint p = SpherePoint::finite(z);
    for (const ConicalEntry& e : divisor_) {
        if (chordal_distance(p, e.point) < 10.0 * h)
            throw std::domain_error("sample point within 10h of a critical point");
    }
    auto u = [&](Complex x) { return 0.5 * std::log(density(x)); };
    const double lap = (u(z + h) + u(z - h) + u(z + Complex(0.0, h)) + u(z - Complex(0.0, h)) -
                        4.0 * u(z)) /
                       (h * h);
    return -std::exp(-2.0 * u(z)) * lap;
}

}  // namespace curvone
