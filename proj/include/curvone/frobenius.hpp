#pragma once

#include <utility>
#include <vector>

#include "curvone/complex_sphere.hpp"
#include "curvone/schwarzian.hpp"

namespace curvone {

// Truncated power series sum coeffs[k] x^k; the truncation order is the
// number of stored coefficients (at least 1).
struct PowerSeries {
    std::vector<Complex> coeffs;

    int order() const { return static_cast<int>(coeffs.size()); }
    Complex coeff(int k) const {
        return (k >= 0 && k < order()) ? coeffs[static_cast<size_t>(k)] : Complex(0.0);
    }
    Complex eval(Complex x) const;
};

// One local solution of x^2 u'' + q(x) u = 0 at the origin:
//   u = x^exponent sum coeffs[k] x^k
//     + log x * x^{exponent + companion_shift} sum companion_coeffs[k] x^k
// with coeffs[0] = 1; the companion part is present only when logarithmic.
struct FrobeniusSolution {
    Complex exponent;
    std::vector<Complex> coeffs;
    bool logarithmic = false;
    int companion_shift = 0;
    std::vector<Complex> companion_coeffs;
};

// Exponent normal form of the ratio of two local solutions.
enum class NormalFormKind { MuZs, LambdaZNegs, General };
struct LocalNormalForm {
    double alpha;
    NormalFormKind form;
    Complex mu_or_lambda;
};

// Roots (s0, s1) = ((1-alpha)/2, (1+alpha)/2) of the indicial polynomial
// f(s) = s(s-1) + (1 - alpha^2)/4; s1 - s0 = alpha.
std::pair<double, double> indicial_roots(double alpha);

// Frobenius series at exponent s: coefficients from the recurrence
// f(s+n) c_n + R_n = 0, R_n = sum_{i<n} c_i b_{n-i}.  Requires the branch to
// be resonance-free: |f(s+n)| >= 1e-12 for 1 <= n <= N.
FrobeniusSolution frobenius_series(const PowerSeries& q, Complex s, int N = 32);

// Obstruction R_m at m = alpha (integer >= 2) for the lower indicial branch:
// zero exactly when the singularity is apparent (log-free basis exists).
Complex resonance_obstruction(const PowerSeries& q, int alpha);

// Fundamental pair at a regular singular point with angle alpha.  Non-integer
// alpha: branch solutions at (s0, s1).  Integer alpha with vanishing
// obstruction: log-free pair, the resonant coefficient fixed to 0.  Otherwise
// the second solution carries the log companion series.
std::pair<FrobeniusSolution, FrobeniusSolution> local_solutions(const PowerSeries& q, double alpha,
                                                                int N = 32);

// q(x) = (c + d x + x^2 phi(x)) / 2 with phi recovered from the tail's ring
// samples; at most order 2 + #samples coefficients are recoverable.
PowerSeries ode_from_schwarzian(const SchwarzianTail& tail, int order = 10);

// Ratio of the two solutions as x^{+-alpha} times a unit series; rejects
// logarithmic input.
LocalNormalForm ratio_normal_form(const FrobeniusSolution& sol0, const FrobeniusSolution& sol1);

// Largest coefficient magnitude of x^2 u'' + q u over the truncated orders;
// rounding-level for a genuine solution.
double solution_residual(const PowerSeries& q, const FrobeniusSolution& u);

// Evaluates u at x = r e^{i theta} with the log branch continued in theta
// (theta is not reduced mod 2 pi).
Complex eval_solution(const FrobeniusSolution& u, double r, double theta);

}  // namespace curvone
