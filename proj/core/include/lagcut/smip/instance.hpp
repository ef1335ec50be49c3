#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "lagcut/milp/backend.hpp"
#include "lagcut/milp/model.hpp"
#include "lagcut/sparse_matrix.hpp"

namespace lagcut::smip {

/// One realization of the second-stage data. Rows read T x + W y >= h.
struct Scenario {
  double probability = 0.0;
  std::vector<double> cost;  // d_s, length n2
  SparseMatrix technology;   // T^s, m2 x n1
  SparseMatrix recourse;     // W^s, m2 x n2
  std::vector<double> rhs;   // h^s, length m2

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Two-stage stochastic mixed-integer program
///   min c^T x + sum_s p_s d_s^T y^s
///   s.t. A x = b, T^s x + W^s y^s >= h^s, 0 <= x <= x_upper, y^s >= 0,
/// with the trailing `num_integer` first-stage variables integer and the
/// trailing `num_integer_recourse` second-stage variables integer.
struct SmipInstance {
  std::string name;
  int num_first = 0;             // n1
  int num_integer = 0;           // p1
  int num_integer_recourse = 0;  // p2 (0 means continuous recourse)
  std::vector<double> cost;      // c
  SparseMatrix first_stage;      // A, m1 x n1
  std::vector<double> first_rhs; // b
  std::vector<double> upper;     // first-stage upper bounds, +inf when absent
  std::vector<Scenario> scenarios;

  int num_scenarios() const { return static_cast<int>(scenarios.size()); }
  int num_second() const { return scenarios.empty() ? 0 : static_cast<int>(scenarios.front().cost.size()); }
  int num_second_rows() const { return scenarios.empty() ? 0 : static_cast<int>(scenarios.front().rhs.size()); }
  int num_first_rows() const { return first_stage.rows(); }

  bool is_integer_first(int j) const { return j >= num_first - num_integer; }
  bool is_integer_second(int j) const { return j >= num_second() - num_integer_recourse; }

  /// True when every first-stage variable is integer with bounds [0, 1].
  bool binary_first_stage() const;

  /// True when every d_s is componentwise nonnegative.
  bool nonnegative_recourse_costs() const;

  friend bool operator==(const SmipInstance&, const SmipInstance&) = default;
};

struct ValidationReport {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_instance(const SmipInstance& inst);

/// Throws ModelError listing every issue when the instance is malformed.
void require_valid(const SmipInstance& inst);

/// Deterministic-equivalent MILP: variables x (n1) followed by y^1..y^S (n2 each).
milp::MilpModel extensive_form(const SmipInstance& inst);

/// Column of y^s_j inside extensive_form.
inline int extensive_column(const SmipInstance& inst, int s, int j) {
  return inst.num_first + s * inst.num_second() + j;
}

/// Scenario LP/MILP min d_s^T y s.t. W^s y >= h^s - T^s x, y >= 0. When
/// `keep_integrality` is false the integer recourse variables are relaxed.
milp::MilpModel recourse_model(const SmipInstance& inst, int s, std::span<const double> x,
                               bool keep_integrality);

inline constexpr double kInfeasibleValue = std::numeric_limits<double>::infinity();

/// Second-stage value f_s(x); honours integer recourse variables. Returns
/// kInfeasibleValue when no feasible recourse exists. Throws std::out_of_range
/// for a bad scenario index.
double second_stage_value(const SmipInstance& inst, int s, std::span<const double> x,
                          const milp::SolverBackend& backend = milp::bundled_backend());

/// Continuous-recourse value (integrality on y dropped); equals
/// second_stage_value when num_integer_recourse == 0.
double second_stage_lp_value(const SmipInstance& inst, int s, std::span<const double> x,
                             const milp::SolverBackend& backend = milp::bundled_backend());

/// c^T x + sum_s p_s f_s(x).
double expected_cost(const SmipInstance& inst, std::span<const double> x,
                     const milp::SolverBackend& backend = milp::bundled_backend());

}  // namespace lagcut::smip
