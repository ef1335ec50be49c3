#pragma once

#include <span>
#include <vector>

#include "lagcut/benders/cut.hpp"
#include "lagcut/context.hpp"
#include "lagcut/lagrangian/domain.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::lagrangian {

using benders::cut_violation;

struct EpigraphPoint {
  std::vector<double> x;
  double theta = 0.0;
};

/// Finite sample of the scenario epigraph {(x, theta) : theta >= f_s(x)}.
class SampledEpigraph {
 public:
  /// Adds (x, theta); an existing point with the same x keeps the smaller theta.
  /// Returns true when the sample changed.
  bool add(std::vector<double> x, double theta);

  const std::vector<EpigraphPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  void clear() { points_.clear(); }

 private:
  std::vector<EpigraphPoint> points_;
};

struct QbarResult {
  double value = 0.0;  // objective of the returned minimizer
  double bound = 0.0;  // proven lower bound; used as cut right-hand side
  std::vector<double> x;
  std::vector<double> y;
  long nodes = 0;
};

/// Qbar_s(pi, pi0) = min { pi^T x + pi0 d_s^T y : (x, y) in K^s }. Every
/// improving incumbent of the search is appended to `sample` when given.
/// Throws Error when K^s is infeasible or the MILP is unbounded.
QbarResult evaluate_qbar(const smip::SmipInstance& inst, int s, std::span<const double> pi, double pi0,
                         const Context& ctx = {}, SampledEpigraph* sample = nullptr);

struct SeparationOptions {
  int max_iterations = 200;
  /// Absolute bracket width that also ends the loop (lets delta = 0 terminate).
  double abs_gap = 1e-9;
};

struct SeparationResult {
  benders::Cut cut;            // kind Lagrangian, rhs = proven Qbar bound
  double violation = 0.0;      // cut violation at (x_hat, theta_hat)
  double upper_bound = 0.0;    // last master value, >= the true max violation
  bool truncated = false;
  int iterations = 0;
  std::vector<double> ub_trace;
  std::vector<double> lb_trace;
};

/// Maximizes Qbar_s(pi, pi0) - pi^T x_hat - pi0 theta_hat over the domain by
/// the cutting-plane method over `sample`, stopping once UB <= 0 or
/// UB - LB < delta UB. With delta = 0 the returned violation is the maximum.
SeparationResult separate_cut(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                              double theta_hat, const SeparationDomain& domain, double delta,
                              SampledEpigraph& sample, const Context& ctx = {},
                              const SeparationOptions& opts = {});

SeparationResult separate_cut(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                              double theta_hat, const SeparationDomain& domain, double delta,
                              const Context& ctx = {}, const SeparationOptions& opts = {});

}  // namespace lagcut::lagrangian
