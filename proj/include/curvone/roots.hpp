#pragma once

#include <vector>

#include "curvone/polynomial.hpp"

namespace curvone {

struct RootCluster {
    Complex root;
    int multiplicity = 1;
};

// All complex roots with multiplicities; multiplicities sum to deg p.
// Roots are found by Aberth-Ehrlich simultaneous iteration (companion-matrix
// eigenvalues as fallback), then clustered: first pass at radius
// 1e-7 * (1 + |root|), second multiplicity-aware pass that merges residual
// rings around a defective root only when p and its derivatives below the
// merged multiplicity nearly vanish at the polished center.  Every returned
// root r satisfies |p(r)| <= tol * sum_k |p_k| |r|^k.
// Throws std::domain_error for the zero polynomial and std::runtime_error
// with residual diagnostics if validation fails.
std::vector<RootCluster> poly_roots(const Polynomial& p, double tol = 1e-8);

// Raw companion-matrix eigenvalues, no clustering or polishing.  Exposed so
// tests can cross-check poly_roots against an independent route.
std::vector<Complex> companion_roots(const Polynomial& p);

// Roots sorted deterministically (by real part, then imaginary part).
void sort_clusters(std::vector<RootCluster>& roots);

}  // namespace curvone
