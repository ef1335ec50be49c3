#pragma once

#include <chrono>

#include "lagcut/milp/backend.hpp"

namespace lagcut {

/// Time source for trajectories and time limits.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual double now() const = 0;
};

/// Monotonic wall time in seconds since construction.
class WallClock final : public Clock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  double now() const override {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Virtual time: the number of solver calls made through a counting backend.
/// Makes trajectories reproducible bit for bit.
class CallClock final : public Clock {
 public:
  explicit CallClock(const milp::CountingBackend& counter) : counter_(counter) {}
  double now() const override { return static_cast<double>(counter_.calls()); }

 private:
  const milp::CountingBackend& counter_;
};

/// Solver and clock handed to every algorithm layer.
struct Context {
  const milp::SolverBackend* backend = &milp::bundled_backend();
  const Clock* clock = nullptr;

  const milp::SolverBackend& solver() const { return *backend; }
  const Tolerances& tol() const { return backend->tolerances(); }
  double now() const { return clock != nullptr ? clock->now() : 0.0; }
};

}  // namespace lagcut
