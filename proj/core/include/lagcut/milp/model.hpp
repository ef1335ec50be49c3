#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace lagcut::milp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Row sense. Every model is a minimization with rows `a x >= b` or `a x = b`.
enum class Sense { GreaterEqual, Equal };

struct Term {
  int var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::GreaterEqual;
  double rhs = 0.0;
  std::string name;

  /// Builds a row from a dense coefficient vector. Zero entries are kept so
  /// that the row's width is visible to dimension checks.
  static Row from_dense(std::span<const double> coeffs, Sense sense, double rhs,
                        std::string name = {});

  /// Dot product with a dense point.
  double activity(std::span<const double> x) const;

  /// Largest variable index referenced, or -1 for an empty row.
  int max_index() const;

  friend bool operator==(const Row&, const Row&) = default;
};

/// A mixed-integer linear program: min c^T x s.t. rows, lower <= x <= upper,
/// x_j integer where `integer[j]`.
class MilpModel {
 public:
  MilpModel() = default;

  int add_variable(double cost, double lower, double upper, bool is_integer = false,
                   std::string name = {});
  int add_row(Row row);

  int num_vars() const { return static_cast<int>(objective_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }

  const std::vector<double>& objective() const { return objective_; }
  const std::vector<double>& lower() const { return lower_; }
  const std::vector<double>& upper() const { return upper_; }
  const std::vector<char>& integer() const { return integer_; }
  const std::vector<Row>& rows() const { return rows_; }
  const std::vector<std::string>& names() const { return names_; }
  double objective_offset() const { return offset_; }

  void set_objective(int var, double cost);
  void set_bounds(int var, double lower, double upper);
  void set_integer(int var, bool is_integer);
  void set_objective_offset(double offset) { offset_ = offset; }

  bool has_integers() const;

  /// Throws ModelError when a row references a missing variable, a bound pair
  /// is inverted, or a coefficient is not finite.
  void check() const;

  /// Objective value c^T x + offset.
  double evaluate(std::span<const double> x) const;

  /// Largest violation of rows and bounds at x (0 when feasible).
  double max_violation(std::span<const double> x) const;

  friend bool operator==(const MilpModel&, const MilpModel&) = default;

 private:
  std::vector<double> objective_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<char> integer_;
  std::vector<std::string> names_;
  std::vector<Row> rows_;
  double offset_ = 0.0;
};

/// Returns a copy of `model` with `rows` appended. Throws DimensionError when
/// a row references a variable index outside the model.
MilpModel amend_model(const MilpModel& model, std::span<const Row> rows);

/// Copy of the model with every integrality flag cleared.
MilpModel relax_integrality(const MilpModel& model);

}  // namespace lagcut::milp
