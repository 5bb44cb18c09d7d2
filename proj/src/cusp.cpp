#include "curvone/cusp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace curvone {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kFdStep = 1e-5;

double checked_eval(const std::function<double(double, double)>& f, double t, double theta) {
    const double v = f(t, theta);
    if (!std::isfinite(v)) throw std::runtime_error("conformal factor evaluated non-finite");
    return v;
}

void require_descending_negative(const std::vector<double>& ts) {
    if (ts.empty()) throw std::domain_error("cusp sampling needs at least one radius");
    double prev = 0.0;
    for (double t : ts) {
        if (!(t < prev)) throw std::domain_error("cusp radii must be strictly descending in (0, 1)");
        prev = t;
    }
}

std::vector<double> to_log_radii(const std::vector<double>& rs) {
    std::vector<double> ts;
    ts.reserve(rs.size());
    for (double r : rs) {
        if (!(r > 0.0 && r < 1.0)) throw std::domain_error("cusp radii must lie in (0, 1)");
        ts.push_back(std::log(r));
    }
    return ts;
}

}  // namespace

double ConformalFactor::phi(double r, double theta) const {
    if (!(r > 0.0)) throw std::domain_error("conformal factor needs r > 0");
    return checked_eval(phi_log, std::log(r), theta);
}

double ConformalFactor::psi_slope(double t, double theta) const {
    if (dphi_dt) return checked_eval(dphi_dt, t, theta) + 1.0;
    const double fp = checked_eval(phi_log, t + kFdStep, theta);
    const double fm = checked_eval(phi_log, t - kFdStep, theta);
    return (fp - fm) / (2.0 * kFdStep) + 1.0;
}

ConformalFactor ConformalFactor::from_radial(std::function<double(double, double)> phi_r,
                                             std::function<double(double, double)> r_dphi_dr) {
    ConformalFactor f;
    f.phi_log = [phi_r = std::move(phi_r)](double t, double theta) {
        return phi_r(std::exp(t), theta);
    };
    if (r_dphi_dr)
        f.dphi_dt = [g = std::move(r_dphi_dr)](double t, double theta) {
            return g(std::exp(t), theta);
        };
    return f;
}

double CylinderProfile::psi(double t, double theta) const {
    return checked_eval(factor.phi_log, t, theta) + t;
}

ConformalFactor flat_cone_factor(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("cone angle parameter must be positive");
    ConformalFactor f;
    f.phi_log = [alpha](double t, double) { return (alpha - 1.0) * t; };
    f.dphi_dt = [alpha](double, double) { return alpha - 1.0; };
    return f;
}

ConformalFactor spherical_cone_factor(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("cone angle parameter must be positive");
    // phi = (alpha - 1) t + ln(2 alpha) - ln(1 + e^{2 alpha t}); the exponential
    // underflows harmlessly to 0 deep in the cusp.
    ConformalFactor f;
    f.phi_log = [alpha](double t, double) {
        return (alpha - 1.0) * t + std::log(2.0 * alpha) - std::log1p(std::exp(2.0 * alpha * t));
    };
    f.dphi_dt = [alpha](double t, double) {
        const double s = std::exp(2.0 * alpha * t);
        return (alpha - 1.0) - 2.0 * alpha * s / (1.0 + s);
    };
    return f;
}

ConformalFactor hyperbolic_cusp_factor() {
    // phi = -ln r - ln ln(1/r) = -t - ln(-t), defined for t < 0.
    ConformalFactor f;
    f.phi_log = [](double t, double) { return -t - std::log(-t); };
    f.dphi_dt = [](double t, double) { return -1.0 - 1.0 / t; };
    return f;
}

double psi_mean_derivative(const CylinderProfile& c, double t, int n_theta) {
    if (!(t < 0.0)) throw std::domain_error("cylinder coordinate t must be negative");
    if (n_theta < 16) throw std::invalid_argument("angular quadrature needs at least 16 nodes");
    const double h = 2.0 * kPi / n_theta;
    double acc = 0.0;
    for (int j = 0; j < n_theta; ++j) acc += c.dpsi_dt(t, j * h);
    return acc * h;
}

double psi_mean(const CylinderProfile& c, double t, int n_theta) {
    if (!(t < 0.0)) throw std::domain_error("cylinder coordinate t must be negative");
    if (n_theta < 16) throw std::invalid_argument("angular quadrature needs at least 16 nodes");
    const double h = 2.0 * kPi / n_theta;
    double acc = 0.0;
    for (int j = 0; j < n_theta; ++j) acc += c.psi(t, j * h);
    return acc / n_theta;
}

double weak_cusp_indicator_log(const ConformalFactor& f, const std::vector<double>& t_values,
                               int n_theta) {
    require_descending_negative(t_values);
    const CylinderProfile c{f};
    double best = 0.0;
    bool first = true;
    for (double t : t_values) {
        const double v = psi_mean_derivative(c, t, n_theta);
        if (first || v < best) best = v;
        first = false;
    }
    return best;
}

double weak_cusp_indicator(const ConformalFactor& f, const std::vector<double>& r_values,
                           int n_theta) {
    return weak_cusp_indicator_log(f, to_log_radii(r_values), n_theta);
}

bool cusp_limit_check_log(const ConformalFactor& f, const std::vector<double>& t_values) {
    require_descending_negative(t_values);
    const CylinderProfile c{f};
    for (double theta : {0.0, 0.5 * kPi, kPi, 1.5 * kPi}) {
        double prev = c.psi(t_values.front(), theta);
        const double head = prev;
        for (size_t k = 1; k < t_values.size(); ++k) {
            const double v = c.psi(t_values[k], theta);
            if (!(v < prev)) return false;
            prev = v;
        }
        if (!(head - prev >= 1.0)) return false;
    }
    return true;
}

bool cusp_limit_check(const ConformalFactor& f, const std::vector<double>& r_values) {
    return cusp_limit_check_log(f, to_log_radii(r_values));
}

double calabi_energy(const ConformalFactor& f, double r_in, double r_out, int grid) {
    if (!(r_in > 0.0 && r_in < r_out && r_out < 1.0))
        throw std::domain_error("annulus needs 0 < r_in < r_out < 1");
    if (grid < 5) throw std::invalid_argument("grid too coarse for curvature stencil");
    const double t_in = std::log(r_in), t_out = std::log(r_out);
    const double ht = (t_out - t_in) / (grid - 1);
    if (!(t_out + ht < 0.0)) throw std::invalid_argument("grid too coarse for curvature stencil");
    const double hth = 2.0 * kPi / grid;

    // psi on grid+2 radial stations (one ghost each side) x grid angles.
    std::vector<std::vector<double>> psi(grid + 2, std::vector<double>(grid));
    for (int k = 0; k < grid + 2; ++k) {
        const double t = t_in + (k - 1) * ht;
        for (int j = 0; j < grid; ++j) psi[k][j] = checked_eval(f.phi_log, t, j * hth) + t;
    }

    double acc = 0.0;
    for (int k = 1; k <= grid; ++k) {
        const double wt = (k == 1 || k == grid) ? 0.5 : 1.0;  // trapezoid in t
        for (int j = 0; j < grid; ++j) {
            const int jp = (j + 1) % grid, jm = (j + grid - 1) % grid;
            const double lap = (psi[k + 1][j] - 2.0 * psi[k][j] + psi[k - 1][j]) / (ht * ht) +
                               (psi[k][jp] - 2.0 * psi[k][j] + psi[k][jm]) / (hth * hth);
            acc += wt * std::exp(-2.0 * psi[k][j]) * lap * lap;
        }
    }
    return acc * ht * hth;
}

}  // namespace curvone
