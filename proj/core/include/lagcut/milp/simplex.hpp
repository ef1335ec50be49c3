#pragma once

#include "lagcut/milp/model.hpp"
#include "lagcut/milp/solution.hpp"
#include "lagcut/tolerances.hpp"

namespace lagcut::milp {

/// Solves the continuous relaxation of `model` (integrality ignored) with a
/// dense bounded-variable revised simplex. Phase one minimizes artificial
/// infeasibility; pricing is Dantzig with a permanent switch to Bland's rule
/// after `kBlandThreshold` consecutive degenerate pivots.
LpSolution solve_lp(const MilpModel& model, const Tolerances& tol = default_tolerances());

inline constexpr int kBlandThreshold = 1000;

}  // namespace lagcut::milp
