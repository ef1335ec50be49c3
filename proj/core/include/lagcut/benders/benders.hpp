#pragma once

#include <span>
#include <vector>

#include "lagcut/benders/cut.hpp"
#include "lagcut/benders/master.hpp"
#include "lagcut/context.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::benders {

struct SubproblemResult {
  double value = 0.0;
  std::vector<double> dual;  // lambda, one entry per second-stage row
};

/// LP subproblem f_s(x) with integrality on y dropped, plus an optimal dual.
/// Throws Error naming the scenario when the subproblem is infeasible.
SubproblemResult solve_benders_subproblem(const smip::SmipInstance& inst, int s, std::span<const double> x,
                                          const Context& ctx = {});

/// theta_s >= lambda^T (h - T x) as pi = T^T lambda, pi0 = 1, rhs = lambda^T h.
/// Throws Error when lambda is outside {lambda >= 0, W^T lambda <= d}.
Cut benders_cut_from_dual(const smip::SmipInstance& inst, int s, std::span<const double> lambda,
                          int iteration = 0);

struct BendersConfig {
  double cut_tol = 1e-6;
  int max_iterations = 1000;
  MasterConfig master;
};

/// One separation round at the state's current point: adds every Benders cut
/// violated by more than cut_tol. Returns the number of cuts pooled.
int benders_round(const smip::SmipInstance& inst, MasterState& state, const BendersConfig& cfg,
                  const Context& ctx = {});

/// Largest Benders-cut violation at the state's current point.
double max_benders_violation(const smip::SmipInstance& inst, const MasterState& state, const Context& ctx = {});

/// Classic multi-cut Benders on the LP relaxation: master, subproblems, cuts,
/// until no cut is violated. Sets state.truncated on hitting max_iterations.
MasterState benders_root_loop(const smip::SmipInstance& inst, const BendersConfig& cfg = {},
                              const Context& ctx = {});

}  // namespace lagcut::benders
