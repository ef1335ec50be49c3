#include "lagcut/lab/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::lab {

OracleBounds brute_force_bounds(const smip::SmipInstance& inst, const Context& ctx) {
  smip::require_valid(inst);
  const long vars = inst.num_first + static_cast<long>(inst.num_scenarios()) * inst.num_second();
  if (vars > kOracleMaxVariables) {
    throw Error(fmt::format("extensive form has {} variables, oracle limit is {}", vars, kOracleMaxVariables));
  }
  const milp::MilpModel ef = extensive_form(inst);
  OracleBounds out;

  milp::MipOptions opts;
  opts.gap_tol = ctx.tol().exact_mip_gap;
  const milp::MipSolution mip = ctx.solver().solve_milp(ef, opts);
  if (!mip.optimal()) throw Error("extensive MILP did not solve to optimality: " + mip.diagnostic);
  out.mip_opt = mip.objective;

  const milp::LpSolution lp = ctx.solver().solve_lp(relax_integrality(ef));
  if (!lp.optimal()) throw Error("extensive LP relaxation failed: " + lp.diagnostic);
  out.lp_relax = lp.objective;

  if (inst.binary_first_stage() && inst.num_first <= kOracleMaxEnumerated) {
    double best = smip::kInfeasibleValue;
    std::vector<double> x(static_cast<std::size_t>(inst.num_first));
    for (unsigned long mask = 0; mask < (1UL << inst.num_first); ++mask) {
      for (int j = 0; j < inst.num_first; ++j) x[static_cast<std::size_t>(j)] = (mask >> j) & 1UL ? 1.0 : 0.0;
      const std::vector<double> ax = inst.first_stage.multiply(x);
      bool feasible = true;
      for (std::size_t i = 0; i < ax.size(); ++i) {
        feasible = feasible && std::abs(ax[i] - inst.first_rhs[i]) <= 1e-9;
      }
      if (feasible) best = std::min(best, expected_cost(inst, x, ctx.solver()));
    }
    out.enum_opt = best;
  }
  return out;
}

}  // namespace lagcut::lab
