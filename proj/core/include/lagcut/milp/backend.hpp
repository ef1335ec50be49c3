#pragma once

#include <atomic>
#include <memory>

#include "lagcut/milp/model.hpp"
#include "lagcut/milp/solution.hpp"
#include "lagcut/tolerances.hpp"

namespace lagcut::milp {

/// Solver boundary used by every algorithm layer. The bundled simplex and
/// branch-and-bound satisfy it; an adapter for an external solver can be
/// plugged in by implementing the two virtuals.
class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual LpSolution solve_lp(const MilpModel& model) const = 0;
  virtual MipSolution solve_milp(const MilpModel& model, const MipOptions& opts) const = 0;
  virtual const Tolerances& tolerances() const { return default_tolerances(); }
};

class BundledBackend final : public SolverBackend {
 public:
  explicit BundledBackend(Tolerances tol = {}) : tol_(tol) {}
  LpSolution solve_lp(const MilpModel& model) const override;
  MipSolution solve_milp(const MilpModel& model, const MipOptions& opts) const override;
  const Tolerances& tolerances() const override { return tol_; }

 private:
  Tolerances tol_;
};

/// Forwards to another backend and counts top-level solve calls. The count
/// drives the deterministic "calls" clock.
class CountingBackend final : public SolverBackend {
 public:
  explicit CountingBackend(const SolverBackend& inner) : inner_(inner) {}
  LpSolution solve_lp(const MilpModel& model) const override;
  MipSolution solve_milp(const MilpModel& model, const MipOptions& opts) const override;
  const Tolerances& tolerances() const override { return inner_.tolerances(); }

  long calls() const { return calls_.load(std::memory_order_relaxed); }

 private:
  const SolverBackend& inner_;
  mutable std::atomic<long> calls_{0};
};

/// Shared instance of the bundled solver with default tolerances.
const SolverBackend& bundled_backend();

}  // namespace lagcut::milp
