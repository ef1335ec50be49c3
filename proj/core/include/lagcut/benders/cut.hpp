#pragma once

#include <span>
#include <vector>

namespace lagcut::benders {

enum class CutKind { Benders, Lagrangian, Averaged };

const char* to_string(CutKind kind);

/// Inequality pi^T x + pi0 * theta_s >= rhs attached to one scenario.
struct Cut {
  int scenario = 0;
  CutKind kind = CutKind::Benders;
  std::vector<double> pi;
  double pi0 = 1.0;
  double rhs = 0.0;
  int birth_iteration = 0;

  double lhs(std::span<const double> x, double theta) const;
};

/// rhs - pi^T x - pi0 * theta; positive means the point violates the cut.
double cut_violation(const Cut& cut, std::span<const double> x, double theta);

}  // namespace lagcut::benders
