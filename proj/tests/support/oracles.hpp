#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lagcut/milp/model.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
int uniform_int(Rng& rng, int lo, int hi);

/// Feasible, bounded LP with n vars and m rows (mix of >= and = rows).
milp::MilpModel random_lp(Rng& rng, int n, int m);

/// Pure-binary MILP with small integer data; may be infeasible.
milp::MilpModel random_binary_milp(Rng& rng, int n, int m);

/// Minimum over all 0/1 points (nullopt if none feasible); integer arithmetic
/// is exact because the generator only emits integer data.
std::optional<double> enumerate_binary_min(const milp::MilpModel& model);

struct DualCheck {
  double objective = 0.0;       // b^T y plus bound terms on reduced costs
  double infeasibility = 0.0;   // worst sign/bound violation of (y, c - A^T y)
};

/// Dual objective recomputed from the row duals alone.
DualCheck dual_objective(const milp::MilpModel& model, std::span<const double> y);

/// The two-scenario fixture used throughout the tests.
smip::SmipInstance make_t1();

struct RandomSmipShape {
  int n1 = 3;
  int scenarios = 3;
  int n2 = 3;              // structural recourse columns (slacks are added on top)
  int m2 = 2;
  bool integer_recourse = false;
  bool cardinality_row = false;  // adds sum x = floor(n1 / 2)
};

/// Binary first stage, complete recourse through costly slack columns,
/// small integer data so that enumeration oracles are exact.
smip::SmipInstance random_smip(Rng& rng, const RandomSmipShape& shape);

/// Every 0/1 point satisfying Ax = b.
std::vector<std::vector<double>> feasible_binary_points(const smip::SmipInstance& inst);

/// Table of f_s(x) over feasible_binary_points.
struct RecourseTable {
  std::vector<std::vector<double>> points;
  std::vector<std::vector<double>> value;  // value[s][k] = f_s(points[k])
};
RecourseTable recourse_table(const smip::SmipInstance& inst);

/// Qbar_s(pi, pi0) = min over enumerated x of pi^T x + pi0 f_s(x).
double qbar_enum(const RecourseTable& table, int s, std::span<const double> pi, double pi0);

/// min over enumerated x of c^T x + sum_s p_s f_s(x).
double enum_optimum(const smip::SmipInstance& inst, const RecourseTable& table);

/// Grid {-1, -0.5, 0, 0.5, 1}^n in lexicographic order.
std::vector<std::vector<double>> coefficient_grid(int n);

}  // namespace lagcut::testing
