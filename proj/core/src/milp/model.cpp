#include "lagcut/milp/model.hpp"
#include "lagcut/milp/solution.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::milp {

Row Row::from_dense(std::span<const double> coeffs, Sense sense, double rhs, std::string name) {
  Row row;
  row.terms.reserve(coeffs.size());
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    row.terms.push_back({static_cast<int>(j), coeffs[j]});
  }
  row.sense = sense;
  row.rhs = rhs;
  row.name = std::move(name);
  return row;
}

double Row::activity(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& t : terms) sum += t.coef * x[static_cast<std::size_t>(t.var)];
  return sum;
}

int Row::max_index() const {
  int m = -1;
  for (const auto& t : terms) m = std::max(m, t.var);
  return m;
}

int MilpModel::add_variable(double cost, double lower, double upper, bool is_integer,
                            std::string name) {
  objective_.push_back(cost);
  lower_.push_back(lower);
  upper_.push_back(upper);
  integer_.push_back(is_integer ? 1 : 0);
  names_.push_back(std::move(name));
  return num_vars() - 1;
}

int MilpModel::add_row(Row row) {
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

void MilpModel::set_objective(int var, double cost) { objective_.at(static_cast<std::size_t>(var)) = cost; }

void MilpModel::set_bounds(int var, double lower, double upper) {
  lower_.at(static_cast<std::size_t>(var)) = lower;
  upper_.at(static_cast<std::size_t>(var)) = upper;
}

void MilpModel::set_integer(int var, bool is_integer) {
  integer_.at(static_cast<std::size_t>(var)) = is_integer ? 1 : 0;
}

bool MilpModel::has_integers() const {
  return std::any_of(integer_.begin(), integer_.end(), [](char c) { return c != 0; });
}

void MilpModel::check() const {
  const int n = num_vars();
  for (int j = 0; j < n; ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (!std::isfinite(objective_[uj])) {
      throw ModelError(fmt::format("objective coefficient of variable {} is not finite", j));
    }
    if (std::isnan(lower_[uj]) || std::isnan(upper_[uj]) || lower_[uj] > upper_[uj]) {
      throw ModelError(fmt::format("variable {} has invalid bounds [{}, {}]", j, lower_[uj], upper_[uj]));
    }
    if (lower_[uj] == kInf || upper_[uj] == -kInf) {
      throw ModelError(fmt::format("variable {} has an empty infinite bound", j));
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    const Row& row = rows_[static_cast<std::size_t>(i)];
    if (!std::isfinite(row.rhs)) throw ModelError(fmt::format("row {} has non-finite rhs", i));
    for (const auto& t : row.terms) {
      if (t.var < 0 || t.var >= n) {
        throw ModelError(fmt::format("row {} references variable {} but the model has {}", i, t.var, n));
      }
      if (!std::isfinite(t.coef)) throw ModelError(fmt::format("row {} has a non-finite coefficient", i));
    }
  }
}

double MilpModel::evaluate(std::span<const double> x) const {
  double v = offset_;
  for (std::size_t j = 0; j < objective_.size(); ++j) v += objective_[j] * x[j];
  return v;
}

double MilpModel::max_violation(std::span<const double> x) const {
  double worst = 0.0;
  for (std::size_t j = 0; j < objective_.size(); ++j) {
    worst = std::max({worst, lower_[j] - x[j], x[j] - upper_[j]});
  }
  for (const Row& row : rows_) {
    const double a = row.activity(x);
    worst = std::max(worst, row.rhs - a);
    if (row.sense == Sense::Equal) worst = std::max(worst, a - row.rhs);
  }
  return worst;
}

MilpModel amend_model(const MilpModel& model, std::span<const Row> rows) {
  const int n = model.num_vars();
  for (const Row& row : rows) {
    if (row.max_index() >= n) {
      throw DimensionError(fmt::format("row '{}' has {} coefficients but the model has {} variables",
                                       row.name, row.max_index() + 1, n));
    }
  }
  MilpModel out = model;
  for (const Row& row : rows) out.add_row(row);
  return out;
}

MilpModel relax_integrality(const MilpModel& model) {
  MilpModel out = model;
  for (int j = 0; j < out.num_vars(); ++j) out.set_integer(j, false);
  return out;
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::NumericalError: return "NumericalError";
    case LpStatus::IterationLimit: return "IterationLimit";
  }
  return "?";
}

const char* to_string(MipStatus status) {
  switch (status) {
    case MipStatus::Optimal: return "Optimal";
    case MipStatus::Infeasible: return "Infeasible";
    case MipStatus::Unbounded: return "Unbounded";
    case MipStatus::NodeLimit: return "NodeLimit";
    case MipStatus::TimeLimit: return "TimeLimit";
    case MipStatus::NumericalError: return "NumericalError";
  }
  return "?";
}

}  // namespace lagcut::milp
