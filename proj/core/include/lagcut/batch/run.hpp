#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "lagcut/averaged/averaged.hpp"
#include "lagcut/batch/schedule.hpp"
#include "lagcut/benders/benders.hpp"
#include "lagcut/context.hpp"
#include "lagcut/lagrangian/separation.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::batch {

enum class Paradigm { Exact, RstrMIP };

const char* to_string(Paradigm p);

struct RunConfig {
  double epsilon = 1e-6;
  double beta = 1.0;  // 1 means no batching
  Paradigm paradigm = Paradigm::Exact;
  double delta = 0.0;
  int subspace_size = 10;  // K
  double radius = 1.0;     // coefficient box radius for both domains
  bool pi0_fixed = true;
  bool averaged_cuts = false;
  bool collect_stats = false;  // strength records for unprocessed scenarios
  double stats_delta = 0.0;
  double time_limit = 60.0;    // in clock units
  std::uint64_t seed = 1;
  PermutationPolicy policy = PermutationPolicy::FixedRoundRobin;
  int stall_window = 5;
  double stall_tol = 1e-9;
  int max_resolves = 10000;
  double cut_tol = 1e-6;
  lagrangian::SeparationOptions separation;
  benders::BendersConfig benders;

  /// Throws Error when a field is outside its domain.
  void check() const;

  /// Exact-Tra, Exact-Lbb(0.25), RstrMIP-Tra, RstrMIP-Lbb(0.05), ...
  std::string method_name() const;
};

/// Overrides paradigm and beta from a method name; throws Error when unparsable.
void apply_method_name(RunConfig& cfg, const std::string& name);

enum class RunStatus { Running, EpsOptimal, TimeLimit, Stalled };

const char* to_string(RunStatus s);

struct TrajectoryRecord {
  double time = 0.0;
  int iteration = 0;
  int batch = -1;  // batch whose stopping event led to this resolve, -1 if none
  double lb = 0.0;
  long cuts_benders = 0;
  long cuts_lagrangian = 0;
  long cuts_averaged = 0;
};

struct Trajectory {
  std::vector<TrajectoryRecord> records;
  RunStatus status = RunStatus::Running;

  double final_lb() const { return records.empty() ? 0.0 : records.back().lb; }
};

/// Columns: time_s, iter, batch, lb, cuts_benders, cuts_lagrangian, cuts_averaged, status.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);
Trajectory read_trajectory_csv(std::istream& in);

struct RunResult {
  Trajectory trajectory;
  benders::MasterState state;
  long separations = 0;
  long master_resolves = 0;  // resolves after the Benders root phase
  long sweeps = 0;
  double benders_time = 0.0;
  double total_time = 0.0;
  double last_sweep_violation = 0.0;  // accumulated weighted violation of the final sweep
  std::vector<averaged::StrengthRecord> strength_records;
};

/// Batched Lagrangian cut generation on top of a Benders root loop.
RunResult run(const smip::SmipInstance& inst, const RunConfig& cfg, const Context& ctx = {});

/// Continues from an existing master state, starting with a sweep at its
/// current point (no Benders root loop, no initial resolve).
RunResult run_from(const smip::SmipInstance& inst, const RunConfig& cfg, benders::MasterState state,
                   const Context& ctx = {});

using DomainProvider = std::function<lagrangian::SeparationDomain(int scenario)>;

/// Domain used by a run configuration for scenario s at the given state.
lagrangian::SeparationDomain run_domain(const RunConfig& cfg, const benders::MasterState& state, int s);

struct Certificate {
  bool ok = false;
  double weighted_violation = 0.0;  // sum_s p_s max(violation_s, 0)
  double threshold = 0.0;           // eps / (1 - delta)
};

/// Re-separates every scenario at the state's point with fresh samples.
Certificate eps_optimality_certificate(const smip::SmipInstance& inst, const benders::MasterState& state, double eps,
                                       const DomainProvider& domain, double delta, const Context& ctx = {});

Certificate eps_optimality_certificate(const smip::SmipInstance& inst, const benders::MasterState& state, double eps,
                                       const lagrangian::SeparationDomain& domain, double delta,
                                       const Context& ctx = {});

}  // namespace lagcut::batch
