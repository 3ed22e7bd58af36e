#pragma once

#include <cstddef>
#include <vector>

#include "frontier/linalg.hpp"

namespace frontier {

enum class ConstraintSense { Le, Eq, Ge };

// Linear program over non-negative variables:
//   optimize c'x  subject to  A x {<=,=,>=} b,  x >= 0.
struct LpProblem {
    std::vector<double> objective;
    Matrix constraints;                 // one row per constraint
    std::vector<ConstraintSense> senses;
    std::vector<double> rhs;
    bool maximize = false;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    double objective_value = 0.0;       // in the problem's own sense
    std::vector<double> x;
};

// Two-phase primal simplex with Bland's anti-cycling rule on a dense tableau.
// Feasibility and optimality tolerances are 1e-9. Deterministic for fixed
// input.
LpSolution lp_solve(const LpProblem& p);

} // namespace frontier
