#include "lagcut/benders/master.hpp"

#include <cmath>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::benders {

MasterState::MasterState(const smip::SmipInstance& inst)
    : x(static_cast<std::size_t>(inst.num_first), 0.0),
      theta(static_cast<std::size_t>(inst.num_scenarios()), 0.0),
      pools_(static_cast<std::size_t>(inst.num_scenarios())) {}

bool MasterState::add_cut(Cut cut, double tol) {
  if (cut.scenario < 0 || cut.scenario >= num_scenarios()) {
    throw std::out_of_range(fmt::format("cut scenario {} outside [0, {})", cut.scenario, num_scenarios()));
  }
  auto& pool = pools_[static_cast<std::size_t>(cut.scenario)];
  for (Cut& old : pool) {
    if (old.pi.size() != cut.pi.size() || std::abs(old.pi0 - cut.pi0) > tol) continue;
    bool same = true;
    for (std::size_t j = 0; j < cut.pi.size() && same; ++j) same = std::abs(old.pi[j] - cut.pi[j]) <= tol;
    if (!same) continue;
    if (old.rhs >= cut.rhs) return false;
    --counts_[static_cast<std::size_t>(old.kind)];
    ++counts_[static_cast<std::size_t>(cut.kind)];
    old = std::move(cut);
    return true;
  }
  ++counts_[static_cast<std::size_t>(cut.kind)];
  pool.push_back(std::move(cut));
  return true;
}

long MasterState::total_cuts() const { return counts_[0] + counts_[1] + counts_[2]; }

double theta_floor(const smip::SmipInstance& inst, const MasterConfig& cfg) {
  if (cfg.theta_floor) return *cfg.theta_floor;
  return inst.nonnegative_recourse_costs() ? 0.0 : -1e7;
}

milp::Row cut_row(const smip::SmipInstance& inst, const Cut& cut) {
  if (static_cast<int>(cut.pi.size()) != inst.num_first) {
    throw DimensionError(fmt::format("cut has {} coefficients, expected n1={}", cut.pi.size(), inst.num_first));
  }
  milp::Row row;
  row.rhs = cut.rhs;
  for (int j = 0; j < inst.num_first; ++j) {
    const double a = cut.pi[static_cast<std::size_t>(j)];
    if (a != 0.0) row.terms.push_back({j, a});
  }
  if (cut.pi0 != 0.0) row.terms.push_back({inst.num_first + cut.scenario, cut.pi0});
  return row;
}

milp::MilpModel master_model(const smip::SmipInstance& inst, const MasterState& state, const MasterConfig& cfg,
                             bool integral) {
  milp::MilpModel model;
  for (int j = 0; j < inst.num_first; ++j) {
    model.add_variable(inst.cost[static_cast<std::size_t>(j)], 0.0, inst.upper[static_cast<std::size_t>(j)],
                       integral && inst.is_integer_first(j), fmt::format("x{}", j + 1));
  }
  const double floor = theta_floor(inst, cfg);
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    model.add_variable(inst.scenarios[static_cast<std::size_t>(s)].probability, floor, milp::kInf, false,
                       fmt::format("theta{}", s + 1));
  }
  for (int i = 0; i < inst.num_first_rows(); ++i) {
    milp::Row row;
    row.sense = milp::Sense::Equal;
    row.rhs = inst.first_rhs[static_cast<std::size_t>(i)];
    for (const auto& t : inst.first_stage.row(i)) row.terms.push_back({t.col, t.value});
    model.add_row(std::move(row));
  }
  for (const auto& pool : state.pools()) {
    for (const Cut& cut : pool) model.add_row(cut_row(inst, cut));
  }
  return model;
}

MasterSolution solve_master(const smip::SmipInstance& inst, MasterState& state, const MasterConfig& cfg,
                            const Context& ctx) {
  const milp::MilpModel model = master_model(inst, state, cfg, false);
  const milp::LpSolution lp = ctx.solver().solve_lp(model);
  if (!lp.optimal()) {
    throw Error(fmt::format("master LP not solved: {} {}", milp::to_string(lp.status), lp.diagnostic));
  }
  MasterSolution out;
  out.x.assign(lp.primal.begin(), lp.primal.begin() + inst.num_first);
  out.theta.assign(lp.primal.begin() + inst.num_first, lp.primal.end());
  out.lower_bound = lp.objective;

  state.x = out.x;
  state.theta = out.theta;
  state.lower_bound = out.lower_bound;
  ++state.iteration;
  state.lb_history.push_back({ctx.now(), out.lower_bound});
  return out;
}

}  // namespace lagcut::benders
