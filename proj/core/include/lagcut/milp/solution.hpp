#pragma once

#include <string>
#include <vector>

namespace lagcut::milp {

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalError, IterationLimit };

const char* to_string(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::NumericalError;
  std::vector<double> primal;
  /// One multiplier per row; nonnegative on `>=` rows at optimality.
  std::vector<double> dual;
  /// c_j - a_j^T dual for every structural variable.
  std::vector<double> reduced_cost;
  double objective = 0.0;
  int iterations = 0;
  std::string diagnostic;

  bool optimal() const { return status == LpStatus::Optimal; }
};

enum class MipStatus { Optimal, Infeasible, Unbounded, NodeLimit, TimeLimit, NumericalError };

const char* to_string(MipStatus status);

struct MipOptions {
  double gap_tol = 1e-6;       // relative: stop when incumbent - bound <= gap_tol * (1 + |incumbent|)
  long node_limit = 1'000'000;
  double time_limit = 1e30;    // seconds of wall time
  bool record_incumbents = false;
};

struct MipSolution {
  MipStatus status = MipStatus::NumericalError;
  std::vector<double> incumbent;  // empty when no integer-feasible point was found
  double objective = 0.0;         // incumbent value (meaningful when incumbent nonempty)
  double bound = 0.0;             // proven lower bound
  long nodes = 0;
  /// Every improving incumbent in discovery order (filled when requested).
  std::vector<std::vector<double>> incumbent_history;
  std::string diagnostic;

  bool optimal() const { return status == MipStatus::Optimal; }
  bool has_incumbent() const { return !incumbent.empty(); }
};

}  // namespace lagcut::milp
