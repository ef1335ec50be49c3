#include "lagcut/bench/branch_and_cut.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "lagcut/benders/benders.hpp"
#include "lagcut/error.hpp"
#include "lagcut/lagrangian/separation.hpp"

namespace lagcut::bench {

namespace {

// theta_s >= (f - L)(sum_{x*_j = 1} x_j - sum_{x*_j = 0} x_j - |ones| + 1) + L
benders::Cut integer_lshaped_cut(int s, std::span<const double> xhat, double f, double low, int iteration) {
  benders::Cut cut;
  cut.scenario = s;
  cut.kind = benders::CutKind::Benders;
  cut.pi0 = 1.0;
  cut.birth_iteration = iteration;
  const double span = f - low;
  int ones = 0;
  for (double v : xhat) {
    const bool one = v > 0.5;
    ones += one ? 1 : 0;
    cut.pi.push_back(one ? -span : span);
  }
  cut.rhs = low + span * (1 - ones);
  return cut;
}

}  // namespace

BcResult branch_and_cut(const smip::SmipInstance& inst, const benders::MasterState& start, const BcOptions& opts,
                        const Context& ctx) {
  const double t0 = ctx.now();
  benders::MasterState state = start;
  const benders::MasterConfig mcfg;
  const bool binary = inst.binary_first_stage();
  std::vector<std::optional<double>> floor(static_cast<std::size_t>(inst.num_scenarios()));
  const std::vector<double> zero(static_cast<std::size_t>(inst.num_first), 0.0);

  BcResult res;
  res.lower_bound = -milp::kInf;
  res.upper_bound = milp::kInf;
  auto closed = [&] {
    return std::isfinite(res.upper_bound) &&
           res.upper_bound - res.lower_bound <= opts.gap_tol * std::max(1.0, std::abs(res.upper_bound));
  };

  while (res.rounds < opts.max_rounds && !closed()) {
    if (res.rounds > 0 && ctx.now() - t0 >= opts.time_limit) break;
    ++res.rounds;
    milp::MipOptions mo;
    mo.gap_tol = 1e-9;
    mo.node_limit = opts.node_limit;
    mo.time_limit = opts.wall_limit;
    const milp::MipSolution mip = ctx.solver().solve_milp(master_model(inst, state, mcfg, true), mo);
    res.nodes += mip.nodes;
    if (mip.status == milp::MipStatus::Infeasible || mip.status == milp::MipStatus::Unbounded) {
      throw Error(fmt::format("branch-and-cut master is {}", milp::to_string(mip.status)));
    }
    res.lower_bound = std::max(res.lower_bound, mip.bound);
    if (!mip.has_incumbent()) break;

    const std::span<const double> x(mip.incumbent.data(), static_cast<std::size_t>(inst.num_first));
    double value = 0.0;
    for (int j = 0; j < inst.num_first; ++j) value += inst.cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    bool added = false;
    for (int s = 0; s < inst.num_scenarios(); ++s) {
      const double theta = mip.incumbent[static_cast<std::size_t>(inst.num_first + s)];
      const double f = smip::second_stage_value(inst, s, x, ctx.solver());
      value += inst.scenarios[static_cast<std::size_t>(s)].probability * f;
      const double tol = 1e-7 * (1.0 + std::abs(f));
      if (theta >= f - tol) continue;
      const benders::SubproblemResult sub = benders::solve_benders_subproblem(inst, s, x, ctx);
      if (theta < sub.value - tol) {
        added = state.add_cut(benders::benders_cut_from_dual(inst, s, sub.dual, res.rounds)) || added;
      } else if (binary) {
        auto& low = floor[static_cast<std::size_t>(s)];
        if (!low) low = lagrangian::evaluate_qbar(inst, s, zero, 1.0, ctx).bound;
        added = state.add_cut(integer_lshaped_cut(s, x, f, *low, res.rounds)) || added;
      }
    }
    res.upper_bound = std::min(res.upper_bound, value);
    if (!mip.optimal() || !added) break;
  }
  res.time = ctx.now() - t0;
  if (res.upper_bound < res.lower_bound) res.lower_bound = res.upper_bound;
  res.solved = closed();
  res.gap_percent = std::isfinite(res.upper_bound)
                        ? 100.0 * (res.upper_bound - res.lower_bound) / std::max(std::abs(res.upper_bound), 1e-9)
                        : milp::kInf;
  return res;
}

}  // namespace lagcut::bench
