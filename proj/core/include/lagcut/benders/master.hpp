#pragma once

#include <array>
#include <optional>
#include <vector>

#include "lagcut/benders/cut.hpp"
#include "lagcut/context.hpp"
#include "lagcut/milp/model.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::benders {

struct LbRecord {
  double time = 0.0;
  double lower_bound = 0.0;
};

/// Per-scenario cut pools plus the most recent relaxed master solution.
class MasterState {
 public:
  MasterState() = default;
  explicit MasterState(const smip::SmipInstance& inst);

  int num_scenarios() const { return static_cast<int>(pools_.size()); }
  const std::vector<Cut>& pool(int s) const { return pools_.at(static_cast<std::size_t>(s)); }
  const std::vector<std::vector<Cut>>& pools() const { return pools_; }

  /// Adds a cut unless a pooled cut of the same scenario has the same
  /// (pi, pi0) within `tol` and an rhs at least as large; a pooled cut with
  /// equal coefficients and smaller rhs is replaced. Returns true when the
  /// pool changed.
  bool add_cut(Cut cut, double tol = 1e-9);

  long cut_count(CutKind kind) const { return counts_[static_cast<std::size_t>(kind)]; }
  long total_cuts() const;

  std::vector<double> x;      // x-hat
  std::vector<double> theta;  // theta-hat per scenario
  double lower_bound = 0.0;
  int iteration = 0;
  bool truncated = false;
  std::vector<LbRecord> lb_history;

 private:
  std::vector<std::vector<Cut>> pools_;
  std::array<long, 3> counts_{};
};

struct MasterConfig {
  /// Lower bound on every theta_s; defaults to 0 when all d_s >= 0, else -1e7.
  std::optional<double> theta_floor;
};

double theta_floor(const smip::SmipInstance& inst, const MasterConfig& cfg);

/// Master over (x, theta): min c^T x + sum p_s theta_s s.t. Ax = b, pooled
/// cuts, theta_s >= floor. x integrality is kept only when `integral` is true.
milp::MilpModel master_model(const smip::SmipInstance& inst, const MasterState& state,
                             const MasterConfig& cfg, bool integral = false);

/// Row form of a cut inside master_model.
milp::Row cut_row(const smip::SmipInstance& inst, const Cut& cut);

struct MasterSolution {
  std::vector<double> x;
  std::vector<double> theta;
  double lower_bound = 0.0;
};

/// Solves the LP relaxation of the master, stores the point in `state` and
/// appends (now, lower bound) to its history. Throws Error if the master is
/// infeasible or unbounded.
MasterSolution solve_master(const smip::SmipInstance& inst, MasterState& state, const MasterConfig& cfg,
                            const Context& ctx = {});

}  // namespace lagcut::benders
