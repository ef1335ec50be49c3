#include "lagcut/milp/backend.hpp"

#include "lagcut/milp/branch_and_bound.hpp"
#include "lagcut/milp/simplex.hpp"

namespace lagcut::milp {

LpSolution BundledBackend::solve_lp(const MilpModel& model) const {
  return milp::solve_lp(model, tol_);
}

MipSolution BundledBackend::solve_milp(const MilpModel& model, const MipOptions& opts) const {
  return milp::solve_milp(model, opts, tol_);
}

LpSolution CountingBackend::solve_lp(const MilpModel& model) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  return inner_.solve_lp(model);
}

MipSolution CountingBackend::solve_milp(const MilpModel& model, const MipOptions& opts) const {
  calls_.fetch_add(1, std::memory_order_relaxed);
  return inner_.solve_milp(model, opts);
}

const SolverBackend& bundled_backend() {
  static const BundledBackend backend{};
  return backend;
}

}  // namespace lagcut::milp
