#include "curvone/frobenius.hpp"

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace curvone {
namespace {

constexpr double kResonanceTol = 1e-12;   // |f(s+n)| below this is a resonance
constexpr double kIntegerTol = 1e-9;      // |alpha - round(alpha)| gate
constexpr double kRootGate = 1e-8;        // how far off an indicial root may sit
// Obstructions below this (relative) are treated as exactly zero.  Potentials
// with exact coefficients land at rounding level; callers holding sampled
// coefficients should judge resonance_obstruction against their own noise.
constexpr double kObstructionTol = 1e-10;

Complex indicial_value(Complex s, Complex b0) { return s * (s - Complex(1.0)) + b0; }

double series_scale(const PowerSeries& q) {
    double s = 1.0;
    for (const Complex& b : q.coeffs) s += std::abs(b);
    return s;
}

struct RecurrenceOut {
    std::vector<Complex> c;    // c_0..c_N, c_0 = 1
    std::vector<Complex> dc;   // d/ds c_k when requested
    Complex forced_rhs{0.0};   // R_m at the forced-zero index
};

// Forward recurrence f(s+n) c_n + R_n = 0 with R_n = sum_{i<n} c_i b_{n-i}.
// force_zero = m replaces the division at n = m by the convention c_m = 0 and
// records R_m; otherwise a small pivot |f(s+n)| is a genuine resonance.
RecurrenceOut run_recurrence(const PowerSeries& q, Complex s, int N, bool want_derivative,
                             int force_zero) {
    RecurrenceOut out;
    out.c.assign(static_cast<size_t>(N) + 1, Complex(0.0));
    out.c[0] = Complex(1.0);
    if (want_derivative) out.dc.assign(static_cast<size_t>(N) + 1, Complex(0.0));
    const Complex b0 = q.coeff(0);
    for (int n = 1; n <= N; ++n) {
        Complex rn(0.0);
        for (int i = 0; i < n; ++i) rn += out.c[static_cast<size_t>(i)] * q.coeff(n - i);
        if (n == force_zero) {
            out.forced_rhs = rn;
            continue;  // c_n stays 0 (and dc_n, unused on this path)
        }
        const Complex fn = indicial_value(s + Complex(static_cast<double>(n)), b0);
        if (std::abs(fn) < kResonanceTol) {
            std::ostringstream msg;
            msg << "resonant index " << n << "; use local_solutions";
            throw std::domain_error(msg.str());
        }
        out.c[static_cast<size_t>(n)] = -rn / fn;
        if (want_derivative) {
            Complex drn(0.0);
            for (int i = 0; i < n; ++i) drn += out.dc[static_cast<size_t>(i)] * q.coeff(n - i);
            const Complex dfn = 2.0 * (s + Complex(static_cast<double>(n))) - Complex(1.0);
            out.dc[static_cast<size_t>(n)] = -(drn * fn - rn * dfn) / (fn * fn);
        }
    }
    return out;
}

}  // namespace

Complex PowerSeries::eval(Complex x) const {
    Complex acc(0.0);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
    return acc;
}

std::pair<double, double> indicial_roots(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
    return {(1.0 - alpha) / 2.0, (1.0 + alpha) / 2.0};
}

FrobeniusSolution frobenius_series(const PowerSeries& q, Complex s, int N) {
    if (N < 1) throw std::invalid_argument("truncation order must be at least 1");
    if (std::abs(indicial_value(s, q.coeff(0))) > kRootGate * series_scale(q))
        throw std::domain_error("exponent is not an indicial root");
    RecurrenceOut rec = run_recurrence(q, s, N, false, -1);
    FrobeniusSolution u;
    u.exponent = s;
    u.coeffs = std::move(rec.c);
    return u;
}

Complex resonance_obstruction(const PowerSeries& q, int alpha) {
    if (alpha < 2) throw std::domain_error("resonance obstruction requires an integer angle >= 2");
    const double s0 = (1.0 - static_cast<double>(alpha)) / 2.0;
    RecurrenceOut rec = run_recurrence(q, Complex(s0), alpha, false, alpha);
    return rec.forced_rhs;
}

std::pair<FrobeniusSolution, FrobeniusSolution> local_solutions(const PowerSeries& q, double alpha,
                                                                int N) {
    if (!(alpha > 0.0)) throw std::domain_error("alpha must be positive");
    if (N < 1) throw std::invalid_argument("truncation order must be at least 1");
    const auto [s0, s1] = indicial_roots(alpha);
    if (std::abs(indicial_value(Complex(s0), q.coeff(0))) > kRootGate * series_scale(q))
        throw std::domain_error("alpha is inconsistent with the constant term of q");
    if (std::abs(alpha - std::round(alpha)) >= kIntegerTol) {
        return {frobenius_series(q, Complex(s0), N), frobenius_series(q, Complex(s1), N)};
    }

    const int m = static_cast<int>(std::lround(alpha));
    if (m > N) throw std::invalid_argument("truncation order below the resonant index");
    RecurrenceOut star = run_recurrence(q, Complex(s0), N, false, m);
    const Complex rm = star.forced_rhs;

    if (std::abs(rm) <= kObstructionTol * series_scale(q)) {
        // Apparent singularity: the lower branch continues through the
        // resonance with c_m = 0.
        FrobeniusSolution lower;
        lower.exponent = Complex(s0);
        lower.coeffs = std::move(star.c);
        return {std::move(lower), frobenius_series(q, Complex(s1), N)};
    }

    // Genuine resonance.  With u* the forced-zero series at s0 (so
    // L u* = R_m x^{s1}) and v = du/ds at s1 (so L v = f'(s1) x^{s1}), the
    // combination u* - (R_m / f'(s1)) v solves the equation; f'(s1) = alpha.
    RecurrenceOut upper = run_recurrence(q, Complex(s1), N, true, -1);
    const Complex rho = rm / Complex(static_cast<double>(m));

    FrobeniusSolution first;
    first.exponent = Complex(s1);
    first.coeffs = upper.c;

    FrobeniusSolution second;
    second.exponent = Complex(s0);
    second.logarithmic = true;
    second.companion_shift = m;
    second.coeffs = std::move(star.c);
    for (int k = m; k <= N; ++k)
        second.coeffs[static_cast<size_t>(k)] -= rho * upper.dc[static_cast<size_t>(k - m)];
    second.companion_coeffs.resize(static_cast<size_t>(N - m) + 1);
    for (int k = 0; k <= N - m; ++k)
        second.companion_coeffs[static_cast<size_t>(k)] = -rho * upper.c[static_cast<size_t>(k)];
    return {std::move(first), std::move(second)};
}

PowerSeries ode_from_schwarzian(const SchwarzianTail& tail, int order) {
    if (tail.c >= 0.5) throw std::domain_error("no positive angle");
    if (order < 1) throw std::invalid_argument("order must be positive");
    const int n_phi = order - 2;
    const int n_samples = static_cast<int>(tail.regular_samples.size());
    if (n_phi > n_samples) throw std::runtime_error("insufficient samples for requested order");

    PowerSeries q;
    q.coeffs.assign(static_cast<size_t>(order), Complex(0.0));
    q.coeffs[0] = Complex(tail.c / 2.0);
    if (order >= 2) q.coeffs[1] = tail.d / 2.0;
    // phi_k from the ring samples: discrete Fourier average of psi_j / x_j^k.
    for (int k = 0; k < n_phi; ++k) {
        Complex acc(0.0);
        for (const auto& [x, psi] : tail.regular_samples) {
            Complex xk(1.0);
            for (int j = 0; j < k; ++j) xk *= x;
            acc += psi / xk;
        }
        q.coeffs[static_cast<size_t>(k) + 2] = acc / (2.0 * static_cast<double>(n_samples));
    }
    return q;
}

LocalNormalForm ratio_normal_form(const FrobeniusSolution& sol0, const FrobeniusSolution& sol1) {
    if (sol0.logarithmic || sol1.logarithmic)
        throw std::domain_error("no z^alpha normal form; non-compact local monodromy");
    if (sol0.coeffs.empty() || sol1.coeffs.empty() || std::abs(sol0.coeffs[0]) < kResonanceTol)
        throw std::runtime_error("degenerate solution pair");
    const Complex delta = sol1.exponent - sol0.exponent;
    const Complex unit = sol1.coeffs[0] / sol0.coeffs[0];
    if (std::abs(unit) < kResonanceTol) throw std::runtime_error("degenerate solution pair");
    if (std::abs(delta) < kResonanceTol) throw std::runtime_error("degenerate solution pair");

    LocalNormalForm nf;
    nf.mu_or_lambda = unit;
    if (std::abs(delta.imag()) <= kResonanceTol && delta.real() > 0.0) {
        nf.form = NormalFormKind::MuZs;
        nf.alpha = delta.real();
    } else if (std::abs(delta.imag()) <= kResonanceTol && delta.real() < 0.0) {
        nf.form = NormalFormKind::LambdaZNegs;
        nf.alpha = -delta.real();
    } else {
        nf.form = NormalFormKind::General;
        nf.alpha = std::abs(delta);
    }
    return nf;
}

double solution_residual(const PowerSeries& q, const FrobeniusSolution& u) {
    const Complex b0 = q.coeff(0);
    const Complex s = u.exponent;
    const int K = static_cast<int>(u.coeffs.size()) - 1;
    const int G = u.logarithmic ? static_cast<int>(u.companion_coeffs.size()) - 1 : -1;
    double worst = 0.0;

    // Plain-power coefficients of x^2 u'' + q u at x^{s+n}; the log companion
    // feeds in through x^2 (x^c log x)'' = c(c-1) x^c log x + (2c-1) x^c.
    const int cap = u.logarithmic ? std::min(K, u.companion_shift + G) : K;
    for (int n = 0; n <= cap; ++n) {
        Complex r = indicial_value(s + Complex(static_cast<double>(n)), b0) *
                    u.coeffs[static_cast<size_t>(n)];
        for (int i = 0; i < n; ++i) r += u.coeffs[static_cast<size_t>(i)] * q.coeff(n - i);
        if (u.logarithmic && n >= u.companion_shift) {
            const Complex c = s + Complex(static_cast<double>(n));
            r += (2.0 * c - Complex(1.0)) *
                 u.companion_coeffs[static_cast<size_t>(n - u.companion_shift)];
        }
        worst = std::max(worst, std::abs(r));
    }
    if (u.logarithmic) {
        const Complex t = s + Complex(static_cast<double>(u.companion_shift));
        for (int k = 0; k <= G; ++k) {
            Complex r = indicial_value(t + Complex(static_cast<double>(k)), b0) *
                        u.companion_coeffs[static_cast<size_t>(k)];
            for (int i = 0; i < k; ++i)
                r += u.companion_coeffs[static_cast<size_t>(i)] * q.coeff(k - i);
            worst = std::max(worst, std::abs(r));
        }
    }
    return worst;
}

Complex eval_solution(const FrobeniusSolution& u, double r, double theta) {
    if (!(r > 0.0)) throw std::domain_error("evaluation radius must be positive");
    const Complex lx(std::log(r), theta);
    const Complex x = std::exp(lx);
    Complex plain(0.0);
    for (size_t k = u.coeffs.size(); k-- > 0;) plain = plain * x + u.coeffs[k];
    Complex value = plain * std::exp(u.exponent * lx);
    if (u.logarithmic) {
        Complex comp(0.0);
        for (size_t k = u.companion_coeffs.size(); k-- > 0;) comp = comp * x + u.companion_coeffs[k];
        value += lx * comp *
                 std::exp((u.exponent + Complex(static_cast<double>(u.companion_shift))) * lx);
    }
    return value;
}

}  // namespace curvone
