#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "curvone/character.hpp"
#include "curvone/pullback.hpp"

namespace curvone {

// One way a conical divisor could carry the divisor/residue pattern of a
// character 1-form: each integer-angle point is either a saddle (a zero of
// order alpha-1) or an extremum (a pole with residue +-alpha); non-integer
// points are always extrema; S extra poles at smooth points carry residue +-1.
// Both identities hold by construction:
//   sum of residues = 0,
//   sum of zero orders - (#extremal poles + S) = -2.
struct FeasibilityAssignment {
    std::vector<size_t> saddles;                   // divisor indices, ascending
    std::vector<std::pair<size_t, int>> extrema;   // (divisor index, sign), ascending
    int smooth_plus = 0;                           // extra smooth poles with residue +1
    int smooth_minus = 0;                          // and with residue -1

    int smooth_total() const { return smooth_plus + smooth_minus; }
};

// Exhaustive enumeration over saddle/extremum roles and residue signs; the
// smooth-pole count is forced by the degree identity and its sign split by
// the residue identity.  Identities are checked in exact rational arithmetic
// whenever every angle admits a small-denominator rational value.  An empty
// result means the divisor pattern is infeasible.
std::vector<FeasibilityAssignment> feasibility_search(const ConicalDivisor& d);

// Two cone points with angles alpha, beta (positive, not 1): feasible iff the
// search on {(P, alpha), (Q, beta)} is nonempty; for non-integer angles this
// reduces to alpha = beta.
bool two_point_check(double alpha, double beta);

// Realizes an assignment as an actual differential: all pole positions
// (extremal and smooth) float, and a minimum-norm Newton iteration drives the
// numerator to vanish to order alpha-1 at each saddle; the Moebius gauge and
// the rank drop from the residue-sum identity are absorbed by the min-norm
// step.  The divisor's own point locations are ignored; only the angle
// pattern matters on the sphere.  Throws when every solution degenerates into
// colliding poles, which happens for patterns that pass the counting
// identities but are not realizable.
ThirdKindDifferential instantiate_assignment(const ConicalDivisor& d,
                                             const FeasibilityAssignment& a);

}  // namespace curvone
