#pragma once

#include <functional>
#include <vector>

namespace curvone {

// Conformal factor phi of a metric e^{2 phi} |dz|^2 on the punctured unit
// disk.  Canonical parametrization is the log radius t = ln r < 0: radii as
// small as e^{-10^4} are far below DBL_MIN, so any r-based evaluator would
// collapse them to 0.  phi_log is required; dphi_dt (analytic d phi / d t,
// equal to r d phi / d r at r = e^t) is optional and, when absent, radial
// slopes fall back to central differences in t with step 1e-5.
struct ConformalFactor {
    std::function<double(double /*t*/, double /*theta*/)> phi_log;
    std::function<double(double, double)> dphi_dt;  // optional

    // Convenience access in the r variable, r > 0.
    double phi(double r, double theta) const;

    // d(phi + t)/dt at (t, theta): the integrand r d(phi + ln r)/dr of the
    // weak-cusp indicator, analytic when dphi_dt is set, else FD.
    double psi_slope(double t, double theta) const;

    // Adapt an r-based evaluator (and optionally r dphi/dr).  Only usable
    // down to radii where e^t is a normal double; prefer native log forms.
    static ConformalFactor from_radial(std::function<double(double, double)> phi_r,
                                       std::function<double(double, double)> r_dphi_dr = {});
};

// Cylinder coordinates on the puncture: psi(t, theta) = phi(e^t e^{i theta}) + t
// for t < 0.  The angular integral Psi(t) = int_0^{2pi} psi dtheta and its
// derivative drive the cusp criteria.
struct CylinderProfile {
    ConformalFactor factor;

    double psi(double t, double theta) const;
    double dpsi_dt(double t, double theta) const { return factor.psi_slope(t, theta); }
};

// Presets.  alpha > 0 is the cone angle in units of 2 pi.
//   flat cone        phi = (alpha - 1) ln r                          K = 0
//   spherical cone   phi = (alpha - 1) ln r + ln(2 alpha / (1 + r^{2 alpha}))   K = 1
//   hyperbolic cusp  phi = -ln r - ln ln(1/r)                        K = -1
// All ship with analytic dphi_dt.
ConformalFactor flat_cone_factor(double alpha);
ConformalFactor spherical_cone_factor(double alpha);
ConformalFactor hyperbolic_cusp_factor();

// Trapezoidal estimate of Psi'(t) = int_0^{2pi} dpsi/dt dtheta on n_theta
// periodic nodes (>= 16, t < 0).  On a periodic grid the trapezoid rule is
// the equal-weight rule and converges spectrally.
double psi_mean_derivative(const CylinderProfile& c, double t, int n_theta);

// Angular mean (1/(2 pi)) int psi dtheta; psi_mean / t is the ratio
// indicator (phi + ln r)/ln r reported alongside the weak-cusp indicator.
double psi_mean(const CylinderProfile& c, double t, int n_theta);

// Weak-cusp indicator: minimum over the sampled radii of
// int_0^{2pi} r d(phi + ln r)/dr dtheta.  A finite-sample proxy for the
// liminf as r -> 0 (a true liminf is not computable from samples; callers
// surfacing this value state the proxy explicitly).  r_values must be
// strictly descending in (0, 1); the _log variant takes t = ln r < 0
// strictly descending and reaches radii below DBL_MIN.
double weak_cusp_indicator(const ConformalFactor& f, const std::vector<double>& r_values,
                           int n_theta = 64);
double weak_cusp_indicator_log(const ConformalFactor& f, const std::vector<double>& t_values,
                               int n_theta = 64);

// True iff phi + ln r is decreasing below every threshold along the sampled
// radii at theta in {0, pi/2, pi, 3 pi/2}.  Finite-sample proxy: strictly
// decreasing at each of the four angles and an overall drop of at least one
// unit; a finite sample cannot witness divergence itself.
bool cusp_limit_check(const ConformalFactor& f, const std::vector<double>& r_values);
bool cusp_limit_check_log(const ConformalFactor& f, const std::vector<double>& t_values);

// Calabi energy int int K^2 dA over the annulus r_in < |z| < r_out with
// K = -e^{-2 phi} Delta phi by finite differences and dA = e^{2 phi} r dr dtheta.
// In cylinder coordinates the integrand collapses to
// e^{-2 psi} (psi_tt + psi_thetatheta)^2 dt dtheta, evaluated on a grid x grid
// node lattice with one ghost layer in t.  Throws if the grid cannot carry
// the curvature stencil (grid < 5, or the outer ghost would leave the disk).
double calabi_energy(const ConformalFactor& f, double r_in, double r_out, int grid);

}  // namespace curvone
