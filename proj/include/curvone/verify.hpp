#pragma once

#include <string>
#include <vector>

namespace curvone {

struct PropertyResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fixed-seed invariant suite over randomized instances plus the shipped
// corpus: residue theorem on random loops, divisor degree -2, rotation
// invariance of the metric density, Gauss-Bonnet areas, the Schwarzian
// weight identity, Frobenius residuals and obstructions, and the two-point /
// three-point feasibility facts.  Deterministic across runs.
std::vector<PropertyResult> run_verify_suite();

}  // namespace curvone
