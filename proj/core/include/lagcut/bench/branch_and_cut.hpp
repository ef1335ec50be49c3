#pragma once

#include "lagcut/benders/master.hpp"
#include "lagcut/context.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::bench {

struct BcOptions {
  double time_limit = 60.0;  // clock units
  long node_limit = 200000;  // per master MILP
  double wall_limit = 1e30;  // per master MILP, seconds
  double gap_tol = 1e-6;     // relative gap that counts as solved
  int max_rounds = 10000;
};

struct BcResult {
  bool solved = false;
  double lower_bound = 0.0;
  double upper_bound = 0.0;  // best expected_cost found, +inf if none
  double gap_percent = 0.0;  // 100 (ub - lb) / |ub|
  long nodes = 0;
  int rounds = 0;
  double time = 0.0;  // clock units
};

/// Finishes a run: solves the master MILP over the pooled cuts and adds
/// Benders cuts plus integer L-shaped cuts (binary first stage) at each
/// incumbent until the bounds meet or the limit is hit.
BcResult branch_and_cut(const smip::SmipInstance& inst, const benders::MasterState& state, const BcOptions& opts,
                        const Context& ctx = {});

}  // namespace lagcut::bench
