#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lagcut/averaged/averaged.hpp"
#include "lagcut/bench/branch_and_cut.hpp"
#include "lagcut/bench/config.hpp"

namespace lagcut::bench {

struct RunRecord {
  std::string instance;
  std::string family;
  std::string method;
  double beta = 1.0;
  double delta = 0.0;
  std::uint64_t seed = 1;
  std::string status;  // batch::RunStatus name or "crashed"
  std::string error;
  double baseline_lb = 0.0;
  double final_lb = 0.0;
  double cut_time = 0.0;
  long sweeps = 0;
  long separations = 0;
  long resolves = 0;
  BcResult bc;
  bool bc_ran = false;
  std::string trajectory_file;  // relative to the output dir
  std::string state_file;
  std::string strength_file;    // empty when no records were collected
  batch::Trajectory trajectory;
  std::vector<averaged::StrengthRecord> strength;

  bool crashed() const { return status == "crashed"; }
};

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<double> gammas;
  std::string clock;
  bool svg = true;

  bool any_crashed() const;
};

/// Runs every (instance, method) pair, writing instances/, trajectories/,
/// states/, strength/, runs.csv and manifest.json under cfg.output_dir.
/// Failures are isolated per run. Progress lines go to `log` when given.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log = nullptr);

/// Reloads a finished experiment from its output directory.
ExperimentResult load_results(const std::string& dir);

/// Master state snapshot with its cut pools and separation settings.
void save_state(const benders::MasterState& state, const batch::RunConfig& cfg, const std::string& path);
benders::MasterState load_state(const smip::SmipInstance& inst, const std::string& path, batch::RunConfig* cfg = nullptr);

}  // namespace lagcut::bench
