#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lagcut/batch/run.hpp"
#include "lagcut/error.hpp"
#include "lagcut/lab/generate.hpp"
#include "lagcut/lab/ranges.hpp"

namespace lagcut::bench {

/// Raised for malformed experiment configurations (CLI exit code 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ClockKind { Wall, Calls };

const char* to_string(ClockKind c);
ClockKind parse_clock(const std::string& name);

struct InstanceSpec {
  std::string name;
  std::string family;  // generator family, or "file"
  std::string path;    // set for file instances
  std::optional<lab::FamilyParams> params;
};

struct MethodSpec {
  std::string label;  // method_name(), with "-Avg" appended for averaged cuts unless overridden
  batch::RunConfig run;
};

struct BcSettings {
  bool enabled = true;
  double time_limit = 60.0;   // clock units, like the run time limit
  double call_budget = 2e5;   // limit under the calls clock
  long node_limit = 200000;   // per master MILP
};

struct ExperimentConfig {
  std::vector<InstanceSpec> instances;
  std::vector<MethodSpec> methods;
  double time_limit = 60.0;    // seconds under the wall clock
  double call_budget = 20000;  // solver calls under the calls clock
  ClockKind clock = ClockKind::Wall;
  int jobs = 1;
  std::vector<double> gammas{0.75, 0.95};
  std::string output_dir = "out";
  std::uint64_t seed = 1;
  lab::GeneratorRanges ranges;
  BcSettings bc;
  bool svg = true;

  /// Run time limit in the units of the selected clock.
  double run_limit() const { return clock == ClockKind::Calls ? call_budget : time_limit; }
  double bc_limit() const { return clock == ClockKind::Calls ? bc.call_budget : bc.time_limit; }

  /// Throws ConfigError.
  void check() const;
};

/// Relative paths (instances, ranges) resolve against `base_dir`. The seed
/// (from the file or `seed_override`) feeds every run's batch permutation and
/// the generator specs listed with "count".
ExperimentConfig parse_experiment_config(const std::string& json_text, const std::string& base_dir = ".",
                                         std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_experiment_config(const std::string& path,
                                        std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace lagcut::bench
