#pragma once

#include "lagcut/milp/model.hpp"
#include "lagcut/milp/solution.hpp"
#include "lagcut/tolerances.hpp"

namespace lagcut::milp {

/// LP-based branch-and-bound. Nodes are explored best-bound first (FIFO on
/// ties); branching picks the most fractional integer variable (lowest index
/// on ties). Integer variables should carry finite bounds.
MipSolution solve_milp(const MilpModel& model, const MipOptions& opts = {},
                       const Tolerances& tol = default_tolerances());

}  // namespace lagcut::milp
