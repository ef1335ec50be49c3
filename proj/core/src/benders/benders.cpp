#include "lagcut/benders/benders.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::benders {

SubproblemResult solve_benders_subproblem(const smip::SmipInstance& inst, int s, std::span<const double> x,
                                          const Context& ctx) {
  const milp::LpSolution lp = ctx.solver().solve_lp(smip::recourse_model(inst, s, x, false));
  if (lp.status == milp::LpStatus::Infeasible) {
    throw Error(fmt::format("scenario {} subproblem is infeasible at the given first-stage point", s + 1));
  }
  if (!lp.optimal()) {
    throw Error(fmt::format("scenario {} subproblem failed: {} {}", s + 1, milp::to_string(lp.status), lp.diagnostic));
  }
  return {lp.objective, lp.dual};
}

Cut benders_cut_from_dual(const smip::SmipInstance& inst, int s, std::span<const double> lambda, int iteration) {
  if (s < 0 || s >= inst.num_scenarios()) {
    throw std::out_of_range(fmt::format("scenario index {} outside [0, {})", s, inst.num_scenarios()));
  }
  const smip::Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
  if (static_cast<int>(lambda.size()) != inst.num_second_rows()) {
    throw DimensionError(fmt::format("dual has length {}, expected m2={}", lambda.size(), inst.num_second_rows()));
  }
  constexpr double tol = 1e-8;
  std::vector<double> lam(lambda.begin(), lambda.end());
  for (std::size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] < -tol) throw Error(fmt::format("dual entry {} is negative ({})", i + 1, lam[i]));
    lam[i] = std::max(lam[i], 0.0);
  }
  const std::vector<double> wl = sc.recourse.multiply_transpose(lam);
  for (std::size_t j = 0; j < wl.size(); ++j) {
    if (wl[j] > sc.cost[j] + tol) {
      throw Error(fmt::format("dual violates W^T lambda <= d in column {} ({} > {})", j + 1, wl[j], sc.cost[j]));
    }
  }
  Cut cut;
  cut.scenario = s;
  cut.kind = CutKind::Benders;
  cut.pi = sc.technology.multiply_transpose(lam);
  cut.pi0 = 1.0;
  cut.rhs = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) cut.rhs += lam[i] * sc.rhs[i];
  cut.birth_iteration = iteration;
  return cut;
}

int benders_round(const smip::SmipInstance& inst, MasterState& state, const BendersConfig& cfg, const Context& ctx) {
  int added = 0;
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const SubproblemResult sub = solve_benders_subproblem(inst, s, state.x, ctx);
    Cut cut = benders_cut_from_dual(inst, s, sub.dual, state.iteration);
    if (cut_violation(cut, state.x, state.theta[static_cast<std::size_t>(s)]) > cfg.cut_tol) {
      if (state.add_cut(std::move(cut))) ++added;
    }
  }
  return added;
}

double max_benders_violation(const smip::SmipInstance& inst, const MasterState& state, const Context& ctx) {
  double worst = 0.0;
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const SubproblemResult sub = solve_benders_subproblem(inst, s, state.x, ctx);
    worst = std::max(worst, sub.value - state.theta[static_cast<std::size_t>(s)]);
  }
  return worst;
}

MasterState benders_root_loop(const smip::SmipInstance& inst, const BendersConfig& cfg, const Context& ctx) {
  smip::require_valid(inst);
  MasterState state(inst);
  solve_master(inst, state, cfg.master, ctx);
  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (benders_round(inst, state, cfg, ctx) == 0) return state;
    solve_master(inst, state, cfg.master, ctx);
  }
  state.truncated = true;
  return state;
}

}  // namespace lagcut::benders
