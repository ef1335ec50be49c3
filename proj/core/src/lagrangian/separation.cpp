#include "lagcut/lagrangian/separation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::lagrangian {

bool SampledEpigraph::add(std::vector<double> x, double theta) {
  for (EpigraphPoint& p : points_) {
    if (p.x == x) {
      if (theta >= p.theta) return false;
      p.theta = theta;
      return true;
    }
  }
  points_.push_back({std::move(x), theta});
  return true;
}

namespace {

milp::MilpModel qbar_model(const smip::SmipInstance& inst, int s, std::span<const double> pi, double pi0) {
  const smip::Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
  milp::MilpModel model;
  for (int j = 0; j < inst.num_first; ++j) {
    model.add_variable(pi[static_cast<std::size_t>(j)], 0.0, inst.upper[static_cast<std::size_t>(j)], inst.is_integer_first(j));
  }
  for (int j = 0; j < inst.num_second(); ++j) {
    model.add_variable(pi0 * sc.cost[static_cast<std::size_t>(j)], 0.0, milp::kInf, inst.is_integer_second(j));
  }
  for (int i = 0; i < inst.num_first_rows(); ++i) {
    milp::Row row;
    row.sense = milp::Sense::Equal;
    row.rhs = inst.first_rhs[static_cast<std::size_t>(i)];
    for (const auto& t : inst.first_stage.row(i)) row.terms.push_back({t.col, t.value});
    model.add_row(std::move(row));
  }
  for (int i = 0; i < inst.num_second_rows(); ++i) {
    milp::Row row;
    row.rhs = sc.rhs[static_cast<std::size_t>(i)];
    for (const auto& t : sc.technology.row(i)) row.terms.push_back({t.col, t.value});
    for (const auto& t : sc.recourse.row(i)) row.terms.push_back({inst.num_first + t.col, t.value});
    model.add_row(std::move(row));
  }
  return model;
}

double recourse_cost(const smip::Scenario& sc, const std::vector<double>& point, int offset) {
  double v = 0.0;
  for (std::size_t j = 0; j < sc.cost.size(); ++j) v += sc.cost[j] * point[static_cast<std::size_t>(offset) + j];
  return v;
}

}  // namespace

QbarResult evaluate_qbar(const smip::SmipInstance& inst, int s, std::span<const double> pi, double pi0,
                         const Context& ctx, SampledEpigraph* sample) {
  if (s < 0 || s >= inst.num_scenarios()) {
    throw std::out_of_range(fmt::format("scenario index {} outside [0, {})", s, inst.num_scenarios()));
  }
  if (static_cast<int>(pi.size()) != inst.num_first) {
    throw DimensionError(fmt::format("pi has length {}, expected n1={}", pi.size(), inst.num_first));
  }
  if (pi0 < 0.0) throw Error(fmt::format("pi0 = {} must be nonnegative", pi0));

  milp::MipOptions opts;
  opts.gap_tol = ctx.tol().exact_mip_gap;
  opts.record_incumbents = sample != nullptr;
  const milp::MipSolution mip = ctx.solver().solve_milp(qbar_model(inst, s, pi, pi0), opts);
  if (mip.status == milp::MipStatus::Infeasible) {
    throw Error(fmt::format("scenario {} has an empty feasible set K^s", s + 1));
  }
  if (mip.status == milp::MipStatus::Unbounded) {
    throw Error(fmt::format("Qbar for scenario {} is unbounded", s + 1));
  }
  if (!mip.has_incumbent()) throw Error(fmt::format("Qbar for scenario {} failed: {}", s + 1, mip.diagnostic));

  const smip::Scenario& sc = inst.scenarios[static_cast<std::size_t>(s)];
  const auto n1 = static_cast<std::ptrdiff_t>(inst.num_first);
  if (sample != nullptr) {
    for (const auto& point : mip.incumbent_history) {
      sample->add(std::vector<double>(point.begin(), point.begin() + n1), recourse_cost(sc, point, inst.num_first));
    }
    sample->add(std::vector<double>(mip.incumbent.begin(), mip.incumbent.begin() + n1),
                recourse_cost(sc, mip.incumbent, inst.num_first));
  }
  QbarResult out;
  out.value = mip.objective;
  out.bound = std::min(mip.bound, mip.objective);
  out.x.assign(mip.incumbent.begin(), mip.incumbent.begin() + n1);
  out.y.assign(mip.incumbent.begin() + n1, mip.incumbent.end());
  out.nodes = mip.nodes;
  return out;
}

namespace {

// Variable layout of the separation master: pi (n1), pi0, eta, then mu (K) for
// a span domain or t (n1) for the norm stage.
struct MasterLayout {
  int n1 = 0;
  int pi0 = 0;
  int eta = 0;
  int extra = 0;
};

milp::MilpModel separation_master(const smip::SmipInstance& inst, std::span<const double> x_hat, double theta_hat,
                                  const SeparationDomain& domain, const SampledEpigraph& sample,
                                  MasterLayout& layout) {
  const int n1 = inst.num_first;
  milp::MilpModel model;
  const bool box = domain.mode == DomainMode::ExactBox;
  for (int j = 0; j < n1; ++j) {
    const double r = box ? domain.radius : milp::kInf;
    model.add_variable(x_hat[static_cast<std::size_t>(j)], -r, r);
  }
  layout.n1 = n1;
  layout.pi0 = model.add_variable(theta_hat, domain.pi0_fixed ? 1.0 : 0.0, 1.0);
  layout.eta = model.add_variable(-1.0, -milp::kInf, milp::kInf);
  layout.extra = model.num_vars();
  if (!box) {
    for (std::size_t k = 0; k < domain.basis.size(); ++k) model.add_variable(0.0, -domain.radius, domain.radius);
    for (int j = 0; j < n1; ++j) {
      milp::Row row;
      row.sense = milp::Sense::Equal;
      row.terms.push_back({j, 1.0});
      for (std::size_t k = 0; k < domain.basis.size(); ++k) {
        const double v = domain.basis[k][static_cast<std::size_t>(j)];
        if (v != 0.0) row.terms.push_back({layout.extra + static_cast<int>(k), -v});
      }
      model.add_row(std::move(row));
    }
  }
  for (const EpigraphPoint& e : sample.points()) {
    milp::Row row;
    for (int j = 0; j < n1; ++j) {
      const double v = e.x[static_cast<std::size_t>(j)];
      if (v != 0.0) row.terms.push_back({j, v});
    }
    row.terms.push_back({layout.pi0, e.theta});
    row.terms.push_back({layout.eta, -1.0});
    model.add_row(std::move(row));
  }
  return model;
}

struct Candidate {
  std::vector<double> pi;
  double pi0 = 1.0;
  double ub = 0.0;
};

// Stage one maximizes the sampled violation; stage two picks the point of
// least l1 norm on (nearly) the same optimal face.
Candidate solve_separation_master(const smip::SmipInstance& inst, std::span<const double> x_hat, double theta_hat,
                                  const SeparationDomain& domain, const SampledEpigraph& sample, const Context& ctx) {
  MasterLayout layout;
  milp::MilpModel model = separation_master(inst, x_hat, theta_hat, domain, sample, layout);
  const milp::LpSolution first = ctx.solver().solve_lp(model);
  if (!first.optimal()) {
    throw Error(fmt::format("separation master failed: {} {}", milp::to_string(first.status), first.diagnostic));
  }
  Candidate out;
  out.ub = -first.objective;

  milp::Row face;
  face.rhs = out.ub - 1e-11 * (1.0 + std::abs(out.ub));
  for (int j = 0; j < layout.n1; ++j) {
    const double v = x_hat[static_cast<std::size_t>(j)];
    if (v != 0.0) face.terms.push_back({j, -v});
  }
  face.terms.push_back({layout.pi0, -theta_hat});
  face.terms.push_back({layout.eta, 1.0});
  model.add_row(std::move(face));
  for (int v = 0; v < model.num_vars(); ++v) model.set_objective(v, 0.0);
  for (int j = 0; j < layout.n1; ++j) {
    const int t = model.add_variable(1.0, 0.0, milp::kInf);
    model.add_row({{{t, 1.0}, {j, -1.0}}, milp::Sense::GreaterEqual, 0.0, {}});
    model.add_row({{{t, 1.0}, {j, 1.0}}, milp::Sense::GreaterEqual, 0.0, {}});
  }
  const milp::LpSolution second = ctx.solver().solve_lp(model);
  const milp::LpSolution& pick = second.optimal() ? second : first;
  out.pi.assign(pick.primal.begin(), pick.primal.begin() + layout.n1);
  out.pi0 = pick.primal[static_cast<std::size_t>(layout.pi0)];
  for (double& v : out.pi) {
    if (std::abs(v) < 1e-12) v = 0.0;
  }
  if (domain.pi0_fixed) out.pi0 = 1.0;
  return out;
}

}  // namespace

SeparationResult separate_cut(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                              double theta_hat, const SeparationDomain& domain, double delta,
                              SampledEpigraph& sample, const Context& ctx, const SeparationOptions& opts) {
  domain.check(inst.num_first);
  if (!(delta >= 0.0 && delta < 1.0)) throw Error(fmt::format("delta = {} outside [0, 1)", delta));
  if (static_cast<int>(x_hat.size()) != inst.num_first) {
    throw DimensionError(fmt::format("x_hat has length {}, expected n1={}", x_hat.size(), inst.num_first));
  }
  if (sample.empty()) {
    const std::vector<double> zero(static_cast<std::size_t>(inst.num_first), 0.0);
    evaluate_qbar(inst, s, zero, 1.0, ctx, &sample);
  }

  SeparationResult res;
  double lb = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> seen;
  bool have_best = false;
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Candidate cand = solve_separation_master(inst, x_hat, theta_hat, domain, sample, ctx);
    const QbarResult q = evaluate_qbar(inst, s, cand.pi, cand.pi0, ctx, &sample);
    benders::Cut cut;
    cut.scenario = s;
    cut.kind = benders::CutKind::Lagrangian;
    cut.pi = cand.pi;
    cut.pi0 = cand.pi0;
    cut.rhs = q.bound;
    const double viol = benders::cut_violation(cut, x_hat, theta_hat);
    if (!have_best || viol > lb) {
      lb = viol;
      res.cut = std::move(cut);
      res.violation = viol;
      have_best = true;
    }
    const double ub = cand.ub;
    res.upper_bound = ub;
    res.iterations = it + 1;
    res.ub_trace.push_back(ub);
    res.lb_trace.push_back(lb);

    if (!(ub > 0.0)) return res;
    const double gap = ub - lb;
    if (gap < delta * ub || gap <= opts.abs_gap) return res;
    std::vector<double> key = cand.pi;
    key.push_back(cand.pi0);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) return res;
    seen.push_back(std::move(key));
  }
  res.truncated = true;
  return res;
}

SeparationResult separate_cut(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                              double theta_hat, const SeparationDomain& domain, double delta, const Context& ctx,
                              const SeparationOptions& opts) {
  SampledEpigraph sample;
  return separate_cut(inst, s, x_hat, theta_hat, domain, delta, sample, ctx, opts);
}

}  // namespace lagcut::lagrangian
