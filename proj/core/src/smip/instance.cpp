#include "lagcut/smip/instance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::smip {

bool SmipInstance::binary_first_stage() const {
  if (num_integer != num_first) return false;
  for (int j = 0; j < num_first; ++j) {
    if (upper.size() != static_cast<std::size_t>(num_first) || upper[static_cast<std::size_t>(j)] != 1.0) return false;
  }
  return true;
}

bool SmipInstance::nonnegative_recourse_costs() const {
  for (const auto& sc : scenarios) {
    if (std::any_of(sc.cost.begin(), sc.cost.end(), [](double v) { return v < 0.0; })) return false;
  }
  return true;
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& issue : issues) {
    if (!out.empty()) out += "; ";
    out += issue;
  }
  return out;
}

ValidationReport validate_instance(const SmipInstance& inst) {
  ValidationReport rep;
  auto issue = [&](std::string msg) { rep.issues.push_back(std::move(msg)); };

  const int n1 = inst.num_first;
  if (n1 < 0) issue(fmt::format("n1={} is negative", n1));
  if (inst.num_integer < 0 || inst.num_integer > n1) {
    issue(fmt::format("p1={} outside [0, n1={}]", inst.num_integer, n1));
  }
  if (static_cast<int>(inst.cost.size()) != n1) {
    issue(fmt::format("c has length {}, expected n1={}", inst.cost.size(), n1));
  }
  if (inst.first_stage.cols() != n1) {
    issue(fmt::format("A has {} cols, expected n1={}", inst.first_stage.cols(), n1));
  }
  if (static_cast<int>(inst.first_rhs.size()) != inst.first_stage.rows()) {
    issue(fmt::format("b has length {}, expected m1={}", inst.first_rhs.size(), inst.first_stage.rows()));
  }
  if (static_cast<int>(inst.upper.size()) != n1) {
    issue(fmt::format("upper bounds have length {}, expected n1={}", inst.upper.size(), n1));
  } else {
    for (int j = 0; j < n1; ++j) {
      if (!(inst.upper[static_cast<std::size_t>(j)] >= 0.0)) {
        issue(fmt::format("upper bound of x{} is {}, expected >= 0", j + 1, inst.upper[static_cast<std::size_t>(j)]));
      }
    }
  }

  if (inst.scenarios.empty()) {
    issue("instance has no scenarios");
    return rep;
  }
  const int n2 = inst.num_second();
  const int m2 = inst.num_second_rows();
  if (inst.num_integer_recourse < 0 || inst.num_integer_recourse > n2) {
    issue(fmt::format("p2={} outside [0, n2={}]", inst.num_integer_recourse, n2));
  }

  double total = 0.0;
  for (std::size_t k = 0; k < inst.scenarios.size(); ++k) {
    const Scenario& sc = inst.scenarios[k];
    const std::size_t s = k + 1;
    total += sc.probability;
    if (!(sc.probability > 0.0) || sc.probability > 1.0) {
      issue(fmt::format("p^{} = {} is outside (0, 1]", s, sc.probability));
    }
    if (static_cast<int>(sc.cost.size()) != n2) {
      issue(fmt::format("d^{} has length {}, expected n2={}", s, sc.cost.size(), n2));
    }
    if (static_cast<int>(sc.rhs.size()) != m2) {
      issue(fmt::format("h^{} has length {}, expected m2={}", s, sc.rhs.size(), m2));
    }
    if (sc.technology.rows() != m2) {
      issue(fmt::format("T^{} has {} rows, expected m2={}", s, sc.technology.rows(), m2));
    }
    if (sc.technology.cols() != n1) {
      issue(fmt::format("T^{} has {} cols, expected n1={}", s, sc.technology.cols(), n1));
    }
    if (sc.recourse.rows() != m2) {
      issue(fmt::format("W^{} has {} rows, expected m2={}", s, sc.recourse.rows(), m2));
    }
    if (sc.recourse.cols() != n2) {
      issue(fmt::format("W^{} has {} cols, expected n2={}", s, sc.recourse.cols(), n2));
    }
  }
  if (std::abs(total - 1.0) > 1e-12) issue(fmt::format("probabilities sum to {:.12g}", total));
  return rep;
}

void require_valid(const SmipInstance& inst) {
  const ValidationReport rep = validate_instance(inst);
  if (!rep.ok()) throw ModelError("malformed instance: " + rep.summary());
}

milp::MilpModel extensive_form(const SmipInstance& inst) {
  require_valid(inst);
  milp::MilpModel model;
  const int n1 = inst.num_first;
  const int n2 = inst.num_second();
  for (int j = 0; j < n1; ++j) {
    model.add_variable(inst.cost[static_cast<std::size_t>(j)], 0.0, inst.upper[static_cast<std::size_t>(j)],
                       inst.is_integer_first(j), fmt::format("x{}", j + 1));
  }
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
    for (int j = 0; j < n2; ++j) {
      model.add_variable(sc.probability * sc.cost[static_cast<std::size_t>(j)], 0.0, milp::kInf,
                         inst.is_integer_second(j), fmt::format("y{}_{}", s + 1, j + 1));
    }
  }
  for (int i = 0; i < inst.num_first_rows(); ++i) {
    milp::Row row;
    row.sense = milp::Sense::Equal;
    row.rhs = inst.first_rhs[static_cast<std::size_t>(i)];
    row.name = fmt::format("first{}", i + 1);
    for (const auto& t : inst.first_stage.row(i)) row.terms.push_back({t.col, t.value});
    model.add_row(std::move(row));
  }
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
    for (int i = 0; i < inst.num_second_rows(); ++i) {
      milp::Row row;
      row.rhs = sc.rhs[static_cast<std::size_t>(i)];
      row.name = fmt::format("s{}_r{}", s + 1, i + 1);
      for (const auto& t : sc.technology.row(i)) row.terms.push_back({t.col, t.value});
      for (const auto& t : sc.recourse.row(i)) row.terms.push_back({extensive_column(inst, s, t.col), t.value});
      model.add_row(std::move(row));
    }
  }
  return model;
}

milp::MilpModel recourse_model(const SmipInstance& inst, int s, std::span<const double> x,
                               bool keep_integrality) {
  if (s < 0 || s >= inst.num_scenarios()) {
    throw std::out_of_range(fmt::format("scenario index {} outside [0, {})", s, inst.num_scenarios()));
  }
  if (static_cast<int>(x.size()) != inst.num_first) {
    throw DimensionError(fmt::format("first-stage point has length {}, expected {}", x.size(), inst.num_first));
  }
  const Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
  milp::MilpModel model;
  for (int j = 0; j < inst.num_second(); ++j) {
    model.add_variable(sc.cost[static_cast<std::size_t>(j)], 0.0, milp::kInf,
                       keep_integrality && inst.is_integer_second(j));
  }
  const std::vector<double> tx = sc.technology.multiply(x);
  for (int i = 0; i < inst.num_second_rows(); ++i) {
    milp::Row row;
    row.rhs = sc.rhs[static_cast<std::size_t>(i)] - tx[static_cast<std::size_t>(i)];
    for (const auto& t : sc.recourse.row(i)) row.terms.push_back({t.col, t.value});
    model.add_row(std::move(row));
  }
  return model;
}

double second_stage_lp_value(const SmipInstance& inst, int s, std::span<const double> x,
                             const milp::SolverBackend& backend) {
  const milp::LpSolution lp = backend.solve_lp(recourse_model(inst, s, x, false));
  if (lp.status == milp::LpStatus::Infeasible) return kInfeasibleValue;
  if (lp.status == milp::LpStatus::Unbounded) return -kInfeasibleValue;
  if (!lp.optimal()) throw Error("recourse LP failed: " + lp.diagnostic);
  return lp.objective;
}

double second_stage_value(const SmipInstance& inst, int s, std::span<const double> x,
                          const milp::SolverBackend& backend) {
  if (inst.num_integer_recourse == 0) return second_stage_lp_value(inst, s, x, backend);
  milp::MipOptions opts;
  opts.gap_tol = backend.tolerances().exact_mip_gap;
  const milp::MipSolution mip = backend.solve_milp(recourse_model(inst, s, x, true), opts);
  if (mip.status == milp::MipStatus::Infeasible) return kInfeasibleValue;
  if (mip.status == milp::MipStatus::Unbounded) return -kInfeasibleValue;
  if (!mip.optimal()) throw Error("recourse MILP failed: " + mip.diagnostic);
  return mip.objective;
}

double expected_cost(const SmipInstance& inst, std::span<const double> x, const milp::SolverBackend& backend) {
  double v = 0.0;
  for (int j = 0; j < inst.num_first; ++j) v += inst.cost[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    v += inst.scenarios[static_cast<std::size_t>(s)].probability * second_stage_value(inst, s, x, backend);
  }
  return v;
}

}  // namespace lagcut::smip
