#include "lagcut/benders/cut.hpp"

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::benders {

const char* to_string(CutKind kind) {
  switch (kind) {
    case CutKind::Benders: return "benders";
    case CutKind::Lagrangian: return "lagrangian";
    case CutKind::Averaged: return "averaged";
  }
  return "unknown";
}

double Cut::lhs(std::span<const double> x, double theta) const {
  if (x.size() != pi.size()) {
    throw DimensionError(fmt::format("cut has {} coefficients, point has {}", pi.size(), x.size()));
  }
  double v = pi0 * theta;
  for (std::size_t j = 0; j < pi.size(); ++j) v += pi[j] * x[j];
  return v;
}

double cut_violation(const Cut& cut, std::span<const double> x, double theta) {
  return cut.rhs - cut.lhs(x, theta);
}

}  // namespace lagcut::benders
