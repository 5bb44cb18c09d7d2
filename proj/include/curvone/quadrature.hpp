#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "curvone/complex_sphere.hpp"

namespace curvone {

// Gauss-Kronrod 7/15 pair on [-1, 1].
namespace gk {
inline constexpr std::array<double, 8> kron_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
inline constexpr std::array<double, 8> kron_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
// Embedded Gauss-7 weights, aligned with kron_nodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};
}  // namespace gk

// Gauss-Legendre 8 on [-1, 1] (positive half; nodes are symmetric).
namespace gl8 {
inline constexpr std::array<double, 4> nodes = {0.1834346424956498, 0.5255324099163290,
                                                0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> weights = {0.3626837833783620, 0.3137066458778873,
                                                  0.2223810344533745, 0.1012285362903763};
}  // namespace gl8

// Adaptive Gauss-Kronrod integral of a complex-valued function over [a, b].
// Bisects until the embedded error estimate per panel drops below the
// (absolute) tolerance share; throws if the budget runs out first.
template <typename Fn>
Complex adaptive_gk(Fn&& f, double a, double b, double tol_abs, int max_depth = 40) {
    struct Frame {
        double a, b, tol;
        int depth;
    };
    Complex total(0.0);
    std::function<void(Frame)> recurse = [&](Frame fr) {
        const double mid = 0.5 * (fr.a + fr.b), half = 0.5 * (fr.b - fr.a);
        Complex ik(0.0), ig(0.0);
        for (size_t i = 0; i < gk::kron_nodes.size(); ++i) {
            const double x = gk::kron_nodes[i];
            Complex v = (x == 0.0) ? f(mid) : f(mid + half * x) + f(mid - half * x);
            ik += gk::kron_weights[i] * v;
            if (i % 2 == 1) ig += gk::gauss_weights[i / 2] * v;
        }
        ik *= half;
        ig *= half;
        const double err = std::abs(ik - ig);
        if (err <= fr.tol || fr.depth >= max_depth) {
            if (fr.depth >= max_depth && err > fr.tol)
                throw std::runtime_error("quadrature non-convergence on segment");
            total += ik;
            return;
        }
        recurse(Frame{fr.a, mid, 0.5 * fr.tol, fr.depth + 1});
        recurse(Frame{mid, fr.b, 0.5 * fr.tol, fr.depth + 1});
    };
    recurse(Frame{a, b, tol_abs, 0});
    return total;
}

// Tensor 8x8 Gauss-Legendre cell value for a real integrand on a rectangle.
template <typename Fn>
double gl8_cell(Fn&& f, double x0, double x1, double y0, double y1) {
    const double xm = 0.5 * (x0 + x1), xh = 0.5 * (x1 - x0);
    const double ym = 0.5 * (y0 + y1), yh = 0.5 * (y1 - y0);
    double acc = 0.0;
    for (size_t i = 0; i < 4; ++i) {
        for (int si : {-1, 1}) {
            const double x = xm + si * xh * gl8::nodes[i];
            double row = 0.0;
            for (size_t j = 0; j < 4; ++j)
                for (int sj : {-1, 1}) row += gl8::weights[j] * f(x, ym + sj * yh * gl8::nodes[j]);
            acc += gl8::weights[i] * row;
        }
    }
    return acc * xh * yh;
}

// Adaptive 2D tensor Gauss-Legendre on a rectangle: each panel is compared
// against its four children and split while the discrepancy exceeds its
// tolerance share.  Deterministic: recursion order is fixed, summation
// ordered.  Throws with the achieved estimate in the message when the depth
// budget is exhausted.
template <typename Fn>
double adaptive_panel(Fn&& f, double x0, double x1, double y0, double y1, double tol_abs,
                      int max_depth = 22) {
    struct Frame {
        double x0, x1, y0, y1, tol;
        int depth;
    };
    double total = 0.0;
    std::function<void(Frame, double)> recurse = [&](Frame fr, double coarse) {
        const double xm = 0.5 * (fr.x0 + fr.x1), ym = 0.5 * (fr.y0 + fr.y1);
        const std::array<Frame, 4> kids = {
            Frame{fr.x0, xm, fr.y0, ym, 0.25 * fr.tol, fr.depth + 1},
            Frame{xm, fr.x1, fr.y0, ym, 0.25 * fr.tol, fr.depth + 1},
            Frame{fr.x0, xm, ym, fr.y1, 0.25 * fr.tol, fr.depth + 1},
            Frame{xm, fr.x1, ym, fr.y1, 0.25 * fr.tol, fr.depth + 1}};
        std::array<double, 4> kv;
        double fine = 0.0;
        for (size_t k = 0; k < 4; ++k) {
            kv[k] = gl8_cell(f, kids[k].x0, kids[k].x1, kids[k].y0, kids[k].y1);
            fine += kv[k];
        }
        if (std::abs(fine - coarse) <= fr.tol) {
            total += fine;
            return;
        }
        if (fr.depth >= max_depth)
            throw std::runtime_error("quadrature non-convergence: estimate " +
                                     std::to_string(total + fine) + ", cell error " +
                                     std::to_string(std::abs(fine - coarse)));
        for (size_t k = 0; k < 4; ++k) recurse(kids[k], kv[k]);
    };
    recurse(Frame{x0, x1, y0, y1, tol_abs, 0}, gl8_cell(f, x0, x1, y0, y1));
    return total;
}

}  // namespace curvone
