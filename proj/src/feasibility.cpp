#include "curvone/feasibility.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "curvone/polynomial.hpp"
#include "curvone/roots.hpp"

namespace curvone {
namespace {

constexpr double kIntegerTol = 1e-9;
constexpr int64_t kDenomCap = 1000000;
constexpr size_t kSearchCap = 10;  // 2^n * 2^n enumeration stays trivial below this

// Small exact rational with a floating fallback for angles that have no
// small-denominator representation.
struct Fraction {
    int64_t num = 0;
    int64_t den = 1;
    bool exact = true;
    double value = 0.0;
};

Fraction inexact(double x) {
    Fraction f;
    f.exact = false;
    f.value = x;
    return f;
}

Fraction from_double(double x) {
    Fraction f;
    f.value = x;
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double ax = std::abs(x);
    // Continued-fraction convergents p/q until the value is matched.
    int64_t p0 = 1, q0 = 0;
    int64_t p1 = static_cast<int64_t>(std::floor(ax)), q1 = 1;
    double rest = ax;
    for (int iter = 0; iter < 64; ++iter) {
        if (std::abs(ax - static_cast<double>(p1) / static_cast<double>(q1)) <=
            1e-12 * std::max(1.0, ax)) {
            f.num = static_cast<int64_t>(sign) * p1;
            f.den = q1;
            return f;
        }
        const double frac = rest - std::floor(rest);
        if (frac < 1e-14) break;
        rest = 1.0 / frac;
        const double anext = std::floor(rest);
        if (anext > 1e15) break;
        const int64_t ai = static_cast<int64_t>(anext);
        const int64_t p2 = ai * p1 + p0;
        const int64_t q2 = ai * q1 + q0;
        if (q2 > kDenomCap) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return inexact(x);
}

Fraction add(const Fraction& a, const Fraction& b) {
    if (!a.exact || !b.exact) return inexact(a.value + b.value);
    __int128 num = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
    __int128 den = static_cast<__int128>(a.den) * b.den;
    __int128 g = num < 0 ? -num : num;
    __int128 h = den;
    while (h != 0) {
        __int128 t = g % h;
        g = h;
        h = t;
    }
    if (g != 0) {
        num /= g;
        den /= g;
    }
    if (den > static_cast<__int128>(4e18) || num > static_cast<__int128>(4e18) ||
        num < static_cast<__int128>(-4e18))
        return inexact(a.value + b.value);
    Fraction f;
    f.num = static_cast<int64_t>(num);
    f.den = static_cast<int64_t>(den);
    f.value = a.value + b.value;
    return f;
}

bool is_integer_angle(double alpha, int& m) {
    if (std::abs(alpha - std::round(alpha)) > kIntegerTol) return false;
    m = static_cast<int>(std::lround(alpha));
    return m >= 2;
}

void validate_divisor(const ConicalDivisor& d) {
    if (d.size() > kSearchCap) throw std::domain_error("divisor too large for exhaustive search");
    for (const ConicalEntry& e : d) {
        if (!(e.alpha > 0.0)) throw std::domain_error("cone angle must be positive");
        if (std::abs(e.alpha - 1.0) <= kIntegerTol)
            throw std::domain_error("divisor contains a smooth point");
    }
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j)
            if (chordal_distance(d[i].point, d[j].point) <= 1e-9)
                throw std::domain_error("divisor points must be distinct");
}

// Split S smooth residues +-1 so everything sums to zero: needs S - T even
// and the plus-count within range; T is the extremal residue total.
bool smooth_split(const Fraction& t, int s, int& plus) {
    int64_t ti = 0;
    if (t.exact) {
        if (t.den != 1) return false;
        ti = t.num;
    } else {
        ti = static_cast<int64_t>(std::llround(t.value));
        if (std::abs(t.value - static_cast<double>(ti)) > 1e-9) return false;
    }
    const int64_t diff = s - ti;
    if (diff % 2 != 0) return false;
    const int64_t p = diff / 2;
    if (p < 0 || p > s) return false;
    plus = static_cast<int>(p);
    return true;
}

}  // namespace

std::vector<FeasibilityAssignment> feasibility_search(const ConicalDivisor& d) {
    validate_divisor(d);
    const size_t n = d.size();

    std::vector<size_t> integer_pts;  // eligible saddle indices
    std::vector<int> integer_m(n, 0);
    std::vector<Fraction> angle(n);
    for (size_t i = 0; i < n; ++i) {
        angle[i] = from_double(d[i].alpha);
        int m = 0;
        if (is_integer_angle(d[i].alpha, m)) {
            integer_pts.push_back(i);
            integer_m[i] = m;
        }
    }

    std::vector<FeasibilityAssignment> out;
    const size_t subsets = size_t{1} << integer_pts.size();
    for (size_t mask = 0; mask < subsets; ++mask) {
        FeasibilityAssignment base;
        std::vector<size_t> extremal;
        int zero_sum = 0;
        for (size_t b = 0; b < integer_pts.size(); ++b) {
            if (mask & (size_t{1} << b)) {
                base.saddles.push_back(integer_pts[b]);
                zero_sum += integer_m[integer_pts[b]] - 1;
            }
        }
        for (size_t i = 0; i < n; ++i)
            if (std::find(base.saddles.begin(), base.saddles.end(), i) == base.saddles.end())
                extremal.push_back(i);

        const int s_count = zero_sum + 2 - static_cast<int>(extremal.size());
        if (s_count < 0) continue;

        const size_t signpatterns = size_t{1} << extremal.size();
        for (size_t bits = 0; bits < signpatterns; ++bits) {
            Fraction total;  // 0/1
            FeasibilityAssignment a = base;
            for (size_t k = 0; k < extremal.size(); ++k) {
                const int sign = (bits & (size_t{1} << k)) ? 1 : -1;
                Fraction term = angle[extremal[k]];
                if (sign < 0) {
                    term.num = -term.num;
                    term.value = -term.value;
                }
                total = add(total, term);
                a.extrema.push_back({extremal[k], sign});
            }
            int plus = 0;
            if (!smooth_split(total, s_count, plus)) continue;
            a.smooth_plus = plus;
            a.smooth_minus = s_count - plus;
            out.push_back(std::move(a));
        }
    }
    return out;
}

bool two_point_check(double alpha, double beta) {
    for (double v : {alpha, beta}) {
        if (!(v > 0.0)) throw std::domain_error("cone angle must be positive");
        if (std::abs(v - 1.0) <= kIntegerTol)
            throw std::domain_error("divisor contains a smooth point");
    }
    ConicalDivisor d;
    d.push_back({SpherePoint::finite(Complex(0.0)), alpha});
    d.push_back({SpherePoint::finite(Complex(1.0)), beta});
    return !feasibility_search(d).empty();
}

namespace {

// Numerator of sum r_j / (z - q_j) over the common denominator.
Polynomial assignment_numerator(const std::vector<Complex>& poles,
                                const std::vector<double>& residues) {
    Polynomial acc = Polynomial::zero();
    for (size_t j = 0; j < poles.size(); ++j) {
        Polynomial term(Complex(residues[j]));
        for (size_t i = 0; i < poles.size(); ++i) {
            if (i == j) continue;
            term = term * Polynomial({-poles[i], Complex(1.0)});
        }
        acc = acc + term;
    }
    return acc;
}

// The sought differential is c * prod (z - zeta_i) / prod (z - q_j) dz with
// the zero positions prescribed and the poles and scale c unknown; demanding
// Res_{q_j} = r_j gives P rational equations.  This formulation is the one
// that survives contact with the degenerate limits: coefficient-matching or
// evaluation equations are polynomial, so "+1 pole annihilates -1 pole"
// configurations are genuine solutions of those systems and Gauss-Newton
// slides onto them, while here a merging pole pair blows the equations up.
// No pole is pinned: fixing even two poles while prescribing every zero
// over-constrains through hidden Moebius invariants (for residues
// (1,1,-1,-1) the two zeros are forced harmonic with respect to the pinned
// pair), so the whole gauge is left to the minimum-norm step, which also
// absorbs the rank drop caused by the residue-sum identity.
struct InstProblem {
    std::vector<double> residues;    // aligned with poles
    std::vector<Complex> poles;      // all unknown
    std::vector<Complex> zero_pos;   // converged zero per saddle, set by the march
    std::vector<int> zero_order;     // demanded numerator order, >= 1
    Complex c{1.0};                  // overall numerator scale

    int total_order() const {
        int n = 0;
        for (int m : zero_order) n += m;
        return n;
    }
    int unknown_count() const { return static_cast<int>(poles.size()) + 1; }
    Complex& unknown(int j) {
        return j < static_cast<int>(poles.size()) ? poles[static_cast<size_t>(j)] : c;
    }
};

// Residue mismatch at every pole for the prescribed zero list zs; holomorphic
// in every unknown, so a real-step finite-difference Jacobian is exact to
// O(h^2).
Eigen::VectorXcd inst_equations(const InstProblem& pb, const std::vector<Complex>& zs) {
    Eigen::VectorXcd f(pb.poles.size());
    for (size_t j = 0; j < pb.poles.size(); ++j) {
        Complex v = pb.c;
        for (const Complex& z : zs) v *= (pb.poles[j] - z);
        for (size_t i = 0; i < pb.poles.size(); ++i)
            if (i != j) v /= (pb.poles[j] - pb.poles[i]);
        f(j) = v - pb.residues[j];
    }
    return f;
}

double inst_rtol(const InstProblem& pb) {
    double rmax = 1.0;
    for (double r : pb.residues) rmax = std::max(rmax, std::abs(r));
    return 1e-12 * rmax;
}

bool newton_at(InstProblem& pb, const std::vector<Complex>& zs) {
    const int n = pb.unknown_count();
    const double rtol = inst_rtol(pb);
    Eigen::VectorXcd f = inst_equations(pb, zs);
    for (int iter = 0; iter < 30; ++iter) {
        if (f.norm() <= rtol) return true;
        Eigen::MatrixXcd jac(f.size(), n);
        for (int j = 0; j < n; ++j) {
            const double h = 1e-6 * (1.0 + std::abs(pb.unknown(j)));
            InstProblem plus = pb;
            plus.unknown(j) += Complex(h);
            InstProblem minus = pb;
            minus.unknown(j) -= Complex(h);
            jac.col(j) = (inst_equations(plus, zs) - inst_equations(minus, zs)) / (2.0 * h);
        }
        const Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(-f);
        double lambda = 1.0;
        bool moved = false;
        for (int halving = 0; halving < 12; ++halving) {
            InstProblem trial = pb;
            for (int j = 0; j < n; ++j) trial.unknown(j) += lambda * step(j);
            const Eigen::VectorXcd ft = inst_equations(trial, zs);
            if (ft.norm() < (1.0 - 0.25 * lambda) * f.norm()) {
                pb = trial;
                f = ft;
                moved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!moved) return false;
    }
    return inst_equations(pb, zs).norm() <= rtol;
}

bool follow_zero_paths(InstProblem& pb, const std::vector<Complex>& start,
                       const std::vector<Complex>& target) {
    double t = 0.0;
    double dt = 0.25;
    while (t < 1.0) {
        const double tn = std::min(1.0, t + dt);
        std::vector<Complex> zs(start.size());
        for (size_t i = 0; i < zs.size(); ++i)
            zs[i] = (1.0 - tn) * start[i] + tn * target[i];
        InstProblem trial = pb;
        if (newton_at(trial, zs)) {
            pb = trial;
            t = tn;
            dt = std::min(0.25, dt * 1.6);
        } else {
            dt *= 0.5;
            if (dt < 1e-4) return false;
        }
    }
    return true;
}

double min_feature_gap(const InstProblem& pb) {
    std::vector<Complex> pts = pb.poles;
    pts.insert(pts.end(), pb.zero_pos.begin(), pb.zero_pos.end());
    double gap = 1e300;
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            gap = std::min(gap, std::abs(pts[i] - pts[j]));
    return gap;
}

}  // namespace

ThirdKindDifferential instantiate_assignment(const ConicalDivisor& d,
                                             const FeasibilityAssignment& a) {
    validate_divisor(d);
    std::vector<int> role(d.size(), 0);  // 1 saddle, 2 extremum
    std::vector<int> saddle_orders;
    int zero_sum = 0;
    for (size_t idx : a.saddles) {
        if (idx >= d.size()) throw std::domain_error("assignment index out of range");
        int m = 0;
        if (!is_integer_angle(d[idx].alpha, m))
            throw std::domain_error("saddle requires an integer angle of at least 2");
        role[idx] = 1;
        saddle_orders.push_back(m - 1);
        zero_sum += m - 1;
    }
    std::vector<double> extremal_residues;
    for (const auto& [idx, sign] : a.extrema) {
        if (idx >= d.size()) throw std::domain_error("assignment index out of range");
        if (role[idx] != 0) throw std::domain_error("assignment reuses a divisor point");
        role[idx] = 2;
        extremal_residues.push_back(sign >= 0 ? d[idx].alpha : -d[idx].alpha);
    }
    for (int r : role)
        if (r == 0) throw std::domain_error("assignment leaves a divisor point without a role");
    if (a.smooth_plus < 0 || a.smooth_minus < 0)
        throw std::domain_error("negative smooth pole count");

    const int s_count = a.smooth_total();
    const int e_count = static_cast<int>(a.extrema.size());
    if (s_count != zero_sum + 2 - e_count)
        throw std::domain_error("assignment does not satisfy the degree identity");
    double residue_sum = static_cast<double>(a.smooth_plus - a.smooth_minus);
    for (double r : extremal_residues) residue_sum += r;
    if (std::abs(residue_sum) > 1e-9)
        throw std::domain_error("assignment does not satisfy the residue identity");

    InstProblem pb;
    for (int k = 0; k < a.smooth_plus; ++k) pb.residues.push_back(1.0);
    for (int k = 0; k < a.smooth_minus; ++k) pb.residues.push_back(-1.0);
    for (double r : extremal_residues) pb.residues.push_back(r);
    const size_t total_poles = pb.residues.size();
    pb.zero_order = saddle_orders;
    const int zero_total = pb.total_order();  // == total_poles - 2 by the degree identity

    for (int attempt = 0; attempt < 6; ++attempt) {
        pb.poles.resize(total_poles);
        const double radius = 2.2 + 0.3 * attempt;
        for (size_t j = 0; j < total_poles; ++j) {
            // irregular spacing; symmetric seeds put the zeros in degenerate
            // constellations that stall the march
            const double jd = static_cast<double>(j);
            const double th = 6.2831853071795865 * (jd + 0.37) /
                                  static_cast<double>(std::max<size_t>(total_poles, 1)) +
                              0.71 * attempt + 0.29 + 0.23 * std::sin(1.7 * jd + 0.4);
            const double rj = radius * (1.0 + 0.11 * std::cos(2.3 * jd + 0.9));
            pb.poles[j] = rj * Complex(std::cos(th), std::sin(th));
        }
        const Polynomial a0 = assignment_numerator(pb.poles, pb.residues);
        if (a0.degree() != zero_total) continue;  // a zero escaped to infinity; reseed
        pb.c = a0.coeff(zero_total);
        std::vector<Complex> start;
        for (const RootCluster& r : poly_roots(a0))
            for (int i = 0; i < r.multiplicity; ++i) start.push_back(r.root);

        // Collision groups, biggest first, claim the tightest unclaimed
        // cluster of seed zeros and merge at its centroid (jittered on
        // retries so fresh attempts take fresh paths); simple saddles keep
        // whatever zeros are left, which shortens every march.
        std::vector<size_t> group(pb.zero_order.size());
        for (size_t l = 0; l < group.size(); ++l) group[l] = l;
        std::sort(group.begin(), group.end(),
                  [&](size_t x, size_t y) { return pb.zero_order[x] > pb.zero_order[y]; });
        pb.zero_pos.assign(pb.zero_order.size(), Complex(0.0));
        std::vector<Complex> target(start.size());
        std::vector<bool> taken(start.size(), false);
        for (size_t gi : group) {
            const int m = pb.zero_order[gi];
            std::vector<size_t> pick;
            if (m == 1) {
                for (size_t s = 0; s < start.size(); ++s)
                    if (!taken[s]) {
                        pick.push_back(s);
                        break;
                    }
            } else {
                double best_spread = 1e300;
                for (size_t s = 0; s < start.size(); ++s) {
                    if (taken[s]) continue;
                    std::vector<std::pair<double, size_t>> near;
                    for (size_t o = 0; o < start.size(); ++o)
                        if (!taken[o] && o != s) near.push_back({std::abs(start[o] - start[s]), o});
                    if (static_cast<int>(near.size()) < m - 1) continue;
                    std::sort(near.begin(), near.end());
                    double spread = 0.0;
                    for (int i = 0; i < m - 1; ++i) spread += near[i].first;
                    if (spread < best_spread) {
                        best_spread = spread;
                        pick.assign(1, s);
                        for (int i = 0; i < m - 1; ++i) pick.push_back(near[i].second);
                    }
                }
            }
            Complex dest(0.0);
            for (size_t s : pick) dest += start[s];
            dest /= static_cast<double>(pick.size());
            if (m >= 2 && attempt > 0) {
                const double th = 2.3999632297286535 * attempt + 0.7 * static_cast<double>(gi);
                dest += 0.35 * attempt * Complex(std::cos(th), std::sin(th));
            }
            for (size_t s : pick) {
                taken[s] = true;
                target[s] = dest;
            }
            pb.zero_pos[gi] = dest;
        }

        if (!follow_zero_paths(pb, start, target)) continue;
        if (min_feature_gap(pb) < 1e-5) continue;

        std::vector<FormPole> poles;
        for (size_t j = 0; j < total_poles; ++j)
            poles.push_back({SpherePoint::finite(pb.poles[j]), pb.residues[j]});
        ThirdKindDifferential w = make_differential(poles);

        // The differential's numerator must vanish to the demanded order at
        // each converged zero and nowhere else, or the pattern would trade or
        // gain cone points.
        const FormDivisor dv = differential_divisor(w);
        bool ok = true;
        std::vector<bool> used(dv.zeros.size(), false);
        for (size_t l = 0; l < pb.zero_pos.size() && ok; ++l) {
            bool found = false;
            for (size_t z = 0; z < dv.zeros.size(); ++z) {
                if (used[z] || dv.zeros[z].point.at_infinity) continue;
                if (std::abs(dv.zeros[z].point.value - pb.zero_pos[l]) <
                        1e-5 * (1.0 + std::abs(pb.zero_pos[l])) &&
                    dv.zeros[z].order == pb.zero_order[l]) {
                    used[z] = true;
                    found = true;
                    break;
                }
            }
            ok = found;
        }
        for (size_t z = 0; z < dv.zeros.size(); ++z)
            if (!used[z]) ok = false;  // stray zero would add a cone point
        if (!ok) continue;
        return w;
    }
    throw std::runtime_error("instantiation failed: degenerate pole configuration");
}

}  // namespace curvone
