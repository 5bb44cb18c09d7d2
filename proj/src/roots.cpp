#include "curvone/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace curvone {

namespace {

constexpr double kClusterRadius = 1e-7;  // base clustering radius, scaled by 1 + |root|

std::vector<Complex> aberth(const Polynomial& p, bool& converged) {
    const int n = p.degree();
    const Polynomial dp = p.derivative();

    // Initial guesses on a circle whose radius mixes the Cauchy bound with
    // the geometric mean of |p_0 / p_n|; the angular offset breaks the
    // symmetry of monomial-like inputs.
    double cauchy = 0.0;
    for (int k = 0; k < n; ++k) cauchy = std::max(cauchy, std::abs(p.coeff(k) / p.leading()));
    cauchy = 1.0 + cauchy;
    double r0 = std::pow(std::max(std::abs(p.coeff(0) / p.leading()), 1e-30), 1.0 / n);
    r0 = std::clamp(r0, 0.1, cauchy);

    std::vector<Complex> z(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        double th = 2.0 * std::numbers::pi * (i + 0.25) / n + 0.79;
        z[static_cast<size_t>(i)] = r0 * Complex(std::cos(th), std::sin(th));
    }

    converged = false;
    for (int iter = 0; iter < 400 && !converged; ++iter) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            Complex zi = z[static_cast<size_t>(i)];
            Complex pv, dv;
            p.eval_with_derivative(zi, pv, dv);
            if (std::abs(pv) <= 1e-16 * p.scaled_norm(std::abs(zi))) continue;
            if (std::abs(dv) == 0.0) {
                z[static_cast<size_t>(i)] += Complex(1e-6, 1e-6) * (1.0 + std::abs(zi));
                converged = false;
                continue;
            }
            Complex newton = pv / dv;
            Complex repel(0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Complex diff = zi - z[static_cast<size_t>(j)];
                if (std::abs(diff) < 1e-30) diff = Complex(1e-30, 0.0);
                repel += 1.0 / diff;
            }
            Complex denom = 1.0 - newton * repel;
            Complex step = (std::abs(denom) < 1e-30) ? newton : newton / denom;
            z[static_cast<size_t>(i)] -= step;
            if (std::abs(step) > 1e-14 * (1.0 + std::abs(zi))) converged = false;
        }
    }
    return z;
}

// Newton polish against p itself; harmless on multiple roots (linear rate).
Complex polish_newton(const Polynomial& p, Complex z, int iters = 8) {
    for (int i = 0; i < iters; ++i) {
        Complex pv, dv;
        p.eval_with_derivative(z, pv, dv);
        if (std::abs(dv) == 0.0) break;
        Complex step = pv / dv;
        if (std::abs(step) > 0.5 * (1.0 + std::abs(z))) break;
        z -= step;
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

struct Group {
    std::vector<Complex> members;
    Complex center() const {
        Complex s(0.0);
        for (Complex m : members) s += m;
        return s / double(members.size());
    }
};

std::vector<Group> greedy_cluster(std::vector<Complex> pts, double radius_factor) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<Group> groups;
    for (Complex z : pts) {
        Group* best = nullptr;
        double best_d = 0.0;
        for (Group& g : groups) {
            double d = std::abs(z - g.center());
            if (d <= radius_factor * (1.0 + std::abs(z)) && (!best || d < best_d)) {
                best = &g;
                best_d = d;
            }
        }
        if (best)
            best->members.push_back(z);
        else
            groups.push_back(Group{{z}});
    }
    return groups;
}

// Accepts a candidate m-fold root at c only if every derivative below order m
// nearly vanishes there, measured against that derivative's own coefficient
// scale.  The threshold is tight on purpose: a polished true m-fold root
// leaves residuals near rounding level in every derivative below m, while a
// spurious merge of distinct roots at separation d leaves a residual of
// order d^2 in some derivative, so anything above ~1e-5 separation is
// rejected here and anything below it is indistinguishable from a multiple
// root in double precision anyway.
bool multiple_root_plausible(const Polynomial& p, Complex c, int m) {
    for (int j = 0; j < m; ++j) {
        Polynomial dj = p.derivative(j);
        double scale = dj.scaled_norm(std::abs(c));
        if (scale == 0.0) continue;
        if (std::abs(dj.eval(c)) > 3e-10 * scale) return false;
    }
    return true;
}

}  // namespace

std::vector<Complex> companion_roots(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -p.coeff(i) / p.leading();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
    std::vector<Complex> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return out;
}

void sort_clusters(std::vector<RootCluster>& roots) {
    std::sort(roots.begin(), roots.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
}

std::vector<RootCluster> poly_roots(const Polynomial& p, double tol) {
    if (p.is_zero()) throw std::domain_error("zero polynomial has no root set");

    std::vector<RootCluster> result;

    // Roots at the origin are split off exactly: low-order coefficients that
    // are negligible against the largest coefficient count as zero.
    std::vector<Complex> c = p.coeffs();
    const double mc = p.max_coeff();
    size_t nzero = 0;
    while (nzero < c.size() - 1 && std::abs(c[nzero]) <= 1e-14 * mc) ++nzero;
    if (nzero > 0) {
        result.push_back(RootCluster{Complex(0.0), static_cast<int>(nzero)});
        c.erase(c.begin(), c.begin() + static_cast<long>(nzero));
    }
    Polynomial q{std::vector<Complex>(c)};

    const int n = q.degree();
    std::vector<Complex> raw;
    if (n == 1) {
        raw = {-q.coeff(0) / q.coeff(1)};
    } else if (n == 2) {
        // Stable quadratic: avoid cancellation in the small root.
        Complex a = q.coeff(2), b = q.coeff(1), c0 = q.coeff(0);
        Complex disc = std::sqrt(b * b - 4.0 * a * c0);
        if (std::real(std::conj(b) * disc) < 0.0) disc = -disc;
        Complex qq = -0.5 * (b + disc);
        Complex r1 = (std::abs(a) > 0.0) ? qq / a : Complex(0.0);
        Complex r2 = (std::abs(qq) > 0.0) ? c0 / qq : -b / a - r1;
        raw = {r1, r2};
    } else if (n >= 3) {
        bool ok = false;
        raw = aberth(q, ok);
        if (!ok) raw = companion_roots(q);
        for (Complex& z : raw) z = polish_newton(q, z);
    }

    if (!raw.empty()) {
        // First pass at the base radius, second multiplicity-aware pass to
        // re-merge the eps^(1/m) ring a defective root leaves behind.
        std::vector<Group> groups = greedy_cluster(raw, kClusterRadius);
        bool merged = true;
        while (merged && groups.size() > 1) {
            merged = false;
            for (size_t i = 0; i < groups.size() && !merged; ++i) {
                for (size_t j = i + 1; j < groups.size() && !merged; ++j) {
                    Complex ci = groups[i].center(), cj = groups[j].center();
                    int m = static_cast<int>(groups[i].members.size() + groups[j].members.size());
                    // Generous distance gate; the derivative test below is
                    // what actually decides.  An m-fold root computed in
                    // double precision scatters its cluster over a ring of
                    // radius about eps^(1/m), which reaches ~1e-3 by m = 5.
                    double allow = 2e-3 * (1.0 + std::abs(ci));
                    if (std::abs(ci - cj) > allow) continue;
                    Complex cand = (double(groups[i].members.size()) * ci +
                                    double(groups[j].members.size()) * cj) /
                                   double(m);
                    cand = polish_newton(q.derivative(m - 1), cand, 12);
                    if (!multiple_root_plausible(q, cand, m)) continue;
                    groups[i].members.insert(groups[i].members.end(), groups[j].members.begin(),
                                             groups[j].members.end());
                    groups.erase(groups.begin() + static_cast<long>(j));
                    merged = true;
                }
            }
        }
        for (const Group& g : groups) {
            int m = static_cast<int>(g.members.size());
            Complex center = g.center();
            // p^(m-1) has a simple root at an m-fold root of p, so Newton on
            // it sharpens the cluster center quadratically.
            center = polish_newton(q.derivative(m - 1), center, 12);
            result.push_back(RootCluster{center, m});
        }
    }

    // Residual validation in the scaled backward-error norm.
    for (const RootCluster& rc : result) {
        double scale = p.scaled_norm(std::abs(rc.root));
        double res = std::abs(p.eval(rc.root));
        if (res > std::max(tol, 1e-8) * scale) {
            std::ostringstream msg;
            msg << "root clustering failure: residual " << res << " at root (" << rc.root.real()
                << ", " << rc.root.imag() << ") exceeds " << std::max(tol, 1e-8) * scale;
            throw std::runtime_error(msg.str());
        }
    }

    sort_clusters(result);
    return result;
}

}  // namespace curvone
