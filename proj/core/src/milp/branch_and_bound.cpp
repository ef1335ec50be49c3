#include "lagcut/milp/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "lagcut/milp/simplex.hpp"

namespace lagcut::milp {
namespace {

struct Node {
  std::vector<double> lower;
  std::vector<double> upper;
  double bound = -kInf;  // parent LP value
  long id = 0;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

// Most fractional integer variable; ties go to the lowest index.
int pick_branch_variable(const MilpModel& model, const std::vector<double>& x, double int_tol) {
  int best = -1;
  double best_dist = int_tol;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.integer()[static_cast<std::size_t>(j)]) continue;
    const double v = x[static_cast<std::size_t>(j)];
    const double frac = v - std::floor(v);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist) {
      best_dist = dist;
      best = j;
    }
  }
  return best;
}

}  // namespace

MipSolution solve_milp(const MilpModel& model, const MipOptions& opts, const Tolerances& tol) {
  model.check();
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };

  MipSolution sol;
  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  long next_id = 0;
  open.push(Node{model.lower(), model.upper(), -kInf, next_id++});

  MilpModel work = model;
  double incumbent_value = kInf;
  double pruned_floor = kInf;  // smallest LP bound among nodes discarded by the gap test
  bool stopped_early = false;
  bool numerical_trouble = false;

  auto cutoff = [&] {
    if (!std::isfinite(incumbent_value)) return kInf;
    return incumbent_value - opts.gap_tol * (1.0 + std::abs(incumbent_value));
  };

  while (!open.empty()) {
    if (sol.nodes >= opts.node_limit) {
      sol.status = MipStatus::NodeLimit;
      stopped_early = true;
      break;
    }
    if (elapsed() > opts.time_limit) {
      sol.status = MipStatus::TimeLimit;
      stopped_early = true;
      break;
    }
    if (open.top().bound >= cutoff()) {
      pruned_floor = std::min(pruned_floor, open.top().bound);
      break;  // best-first: every remaining node is at least as bad
    }
    Node node = open.top();
    open.pop();

    for (int j = 0; j < work.num_vars(); ++j) {
      work.set_bounds(j, node.lower[static_cast<std::size_t>(j)], node.upper[static_cast<std::size_t>(j)]);
    }
    const LpSolution lp = solve_lp(work, tol);
    ++sol.nodes;

    if (lp.status == LpStatus::Infeasible) continue;
    if (lp.status == LpStatus::Unbounded) {
      sol.status = MipStatus::Unbounded;
      sol.bound = -kInf;
      sol.diagnostic = "LP relaxation is unbounded";
      return sol;
    }
    if (lp.status != LpStatus::Optimal) {
      numerical_trouble = true;
      pruned_floor = std::min(pruned_floor, node.bound);
      sol.diagnostic = lp.diagnostic;
      continue;
    }
    if (lp.objective >= cutoff()) {
      pruned_floor = std::min(pruned_floor, lp.objective);
      continue;
    }

    const int branch = pick_branch_variable(model, lp.primal, tol.integrality);
    if (branch < 0) {
      std::vector<double> point = lp.primal;
      for (int j = 0; j < model.num_vars(); ++j) {
        if (model.integer()[static_cast<std::size_t>(j)]) {
          point[static_cast<std::size_t>(j)] = std::round(point[static_cast<std::size_t>(j)]);
        }
      }
      const double value = model.evaluate(point);
      if (value < incumbent_value) {
        incumbent_value = value;
        sol.incumbent = point;
        if (opts.record_incumbents) sol.incumbent_history.push_back(point);
      }
      continue;
    }

    const double v = lp.primal[static_cast<std::size_t>(branch)];
    Node down{node.lower, node.upper, lp.objective, next_id++};
    down.upper[static_cast<std::size_t>(branch)] = std::floor(v);
    Node up{std::move(node.lower), std::move(node.upper), lp.objective, next_id++};
    up.lower[static_cast<std::size_t>(branch)] = std::ceil(v);
    open.push(std::move(down));
    open.push(std::move(up));
  }

  double bound = std::min(incumbent_value, pruned_floor);
  if (stopped_early && !open.empty()) bound = std::min(bound, open.top().bound);
  sol.bound = bound;
  if (sol.has_incumbent()) sol.objective = incumbent_value;

  if (stopped_early) return sol;
  if (!sol.has_incumbent()) {
    sol.status = numerical_trouble ? MipStatus::NumericalError : MipStatus::Infeasible;
    return sol;
  }
  const bool closed = incumbent_value - bound <= opts.gap_tol * (1.0 + std::abs(incumbent_value));
  sol.status = closed ? MipStatus::Optimal : MipStatus::NumericalError;
  return sol;
}

}  // namespace lagcut::milp
