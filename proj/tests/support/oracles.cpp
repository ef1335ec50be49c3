#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lagcut::testing {

using milp::MilpModel;
using milp::Row;
using milp::Sense;

double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

int uniform_int(Rng& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

MilpModel random_lp(Rng& rng, int n, int m) {
  MilpModel model;
  std::vector<double> x0(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const int kind = uniform_int(rng, 0, 3);
    double lo = 0.0, hi = 10.0;
    if (kind == 1) { lo = -5.0; hi = 5.0; }
    if (kind == 2) { lo = uniform(rng, -3.0, 0.0); hi = lo + uniform(rng, 0.0, 4.0); }
    if (kind == 3) { lo = 0.0; hi = milp::kInf; }
    double cost = uniform(rng, -5.0, 5.0);
    if (kind == 3) cost = std::abs(cost) + 0.1;  // keeps the LP bounded
    model.add_variable(cost, lo, hi);
    const double top = std::isfinite(hi) ? hi : lo + 5.0;
    x0[static_cast<std::size_t>(j)] = uniform(rng, lo, top);
  }
  for (int i = 0; i < m; ++i) {
    Row row;
    row.sense = uniform_int(rng, 0, 3) == 0 ? Sense::Equal : Sense::GreaterEqual;
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      if (uniform_int(rng, 0, 2) == 0) continue;
      const double a = uniform(rng, -4.0, 4.0);
      row.terms.push_back({j, a});
      act += a * x0[static_cast<std::size_t>(j)];
    }
    row.rhs = row.sense == Sense::Equal ? act : act - uniform(rng, 0.0, 3.0);
    model.add_row(std::move(row));
  }
  return model;
}

MilpModel random_binary_milp(Rng& rng, int n, int m) {
  MilpModel model;
  for (int j = 0; j < n; ++j) model.add_variable(uniform_int(rng, -9, 9), 0.0, 1.0, true);
  for (int i = 0; i < m; ++i) {
    Row row;
    row.sense = uniform_int(rng, 0, 4) == 0 ? Sense::Equal : Sense::GreaterEqual;
    int positive = 0;
    for (int j = 0; j < n; ++j) {
      const int a = uniform_int(rng, -5, 5);
      if (a == 0) continue;
      row.terms.push_back({j, static_cast<double>(a)});
      if (a > 0) positive += a;
    }
    row.rhs = row.sense == Sense::Equal ? uniform_int(rng, -2, 3) : uniform_int(rng, -positive, positive / 2);
    model.add_row(std::move(row));
  }
  return model;
}

std::optional<double> enumerate_binary_min(const MilpModel& model) {
  const int n = model.num_vars();
  std::optional<double> best;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (long mask = 0; mask < (1L << n); ++mask) {
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (mask >> j) & 1L ? 1.0 : 0.0;
    bool feasible = true;
    for (const Row& row : model.rows()) {
      const double act = row.activity(x);
      if (row.sense == Sense::Equal ? act != row.rhs : act < row.rhs) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const double v = model.evaluate(x);
    if (!best || v < *best) best = v;
  }
  return best;
}

DualCheck dual_objective(const MilpModel& model, std::span<const double> y) {
  DualCheck out;
  std::vector<double> reduced = model.objective();
  for (std::size_t i = 0; i < model.rows().size(); ++i) {
    const Row& row = model.rows()[i];
    out.objective += row.rhs * y[i];
    if (row.sense == Sense::GreaterEqual) out.infeasibility = std::max(out.infeasibility, -y[i]);
    for (const auto& t : row.terms) reduced[static_cast<std::size_t>(t.var)] -= t.coef * y[i];
  }
  for (int j = 0; j < model.num_vars(); ++j) {
    const double r = reduced[static_cast<std::size_t>(j)];
    const double lo = model.lower()[static_cast<std::size_t>(j)];
    const double hi = model.upper()[static_cast<std::size_t>(j)];
    if (r > 0.0) {
      if (std::isfinite(lo)) out.objective += r * lo;
      else out.infeasibility = std::max(out.infeasibility, r);
    } else if (r < 0.0) {
      if (std::isfinite(hi)) out.objective += r * hi;
      else out.infeasibility = std::max(out.infeasibility, -r);
    }
  }
  out.objective += model.objective_offset();
  return out;
}

smip::SmipInstance make_t1() {
  smip::SmipInstance inst;
  inst.name = "T1";
  inst.num_first = 1;
  inst.num_integer = 1;
  inst.cost = {1.0};
  inst.first_stage = SparseMatrix(0, 1);
  inst.upper = {1.0};
  for (double h : {1.0, 2.0}) {
    smip::Scenario sc;
    sc.probability = 0.5;
    sc.cost = {1.0};
    sc.technology = SparseMatrix::from_dense({{1.0}});
    sc.recourse = SparseMatrix::from_dense({{1.0}});
    sc.rhs = {h};
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

smip::SmipInstance random_smip(Rng& rng, const RandomSmipShape& shape) {
  smip::SmipInstance inst;
  inst.name = "random";
  inst.num_first = shape.n1;
  inst.num_integer = shape.n1;
  inst.upper.assign(static_cast<std::size_t>(shape.n1), 1.0);
  for (int j = 0; j < shape.n1; ++j) inst.cost.push_back(uniform_int(rng, 0, 5));
  if (shape.cardinality_row) {
    std::vector<Triplet> a;
    for (int j = 0; j < shape.n1; ++j) a.push_back({0, j, 1.0});
    inst.first_stage = SparseMatrix::from_triplets(1, shape.n1, std::move(a));
    inst.first_rhs = {static_cast<double>(shape.n1 / 2)};
  } else {
    inst.first_stage = SparseMatrix(0, shape.n1);
  }
  const int n2 = shape.m2 + shape.n2;
  inst.num_integer_recourse = shape.integer_recourse ? shape.n2 : 0;
  std::vector<double> weight;
  for (int s = 0; s < shape.scenarios; ++s) weight.push_back(uniform_int(rng, 1, 4));
  double total = 0.0;
  for (double w : weight) total += w;
  double assigned = 0.0;
  for (int s = 0; s < shape.scenarios; ++s) {
    smip::Scenario sc;
    sc.probability = s + 1 == shape.scenarios ? 1.0 - assigned : weight[static_cast<std::size_t>(s)] / total;
    assigned += sc.probability;
    std::vector<Triplet> t, w;
    for (int i = 0; i < shape.m2; ++i) {
      w.push_back({i, i, 1.0});
      for (int j = 0; j < shape.n1; ++j) {
        const int v = uniform_int(rng, -3, 3);
        if (v != 0) t.push_back({i, j, static_cast<double>(v)});
      }
      for (int j = 0; j < shape.n2; ++j) {
        const int v = uniform_int(rng, 0, 3);
        if (v != 0) w.push_back({i, shape.m2 + j, static_cast<double>(v)});
      }
      sc.rhs.push_back(uniform_int(rng, 0, 6));
    }
    for (int i = 0; i < shape.m2; ++i) sc.cost.push_back(8.0);
    for (int j = 0; j < shape.n2; ++j) sc.cost.push_back(uniform_int(rng, 1, 6));
    sc.technology = SparseMatrix::from_triplets(shape.m2, shape.n1, std::move(t));
    sc.recourse = SparseMatrix::from_triplets(shape.m2, n2, std::move(w));
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

std::vector<std::vector<double>> feasible_binary_points(const smip::SmipInstance& inst) {
  std::vector<std::vector<double>> out;
  const int n = inst.num_first;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (long mask = 0; mask < (1L << n); ++mask) {
    for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = (mask >> j) & 1L ? 1.0 : 0.0;
    const std::vector<double> ax = inst.first_stage.multiply(x);
    bool ok = true;
    for (std::size_t i = 0; i < ax.size(); ++i) ok = ok && std::abs(ax[i] - inst.first_rhs[i]) <= 1e-9;
    if (ok) out.push_back(x);
  }
  return out;
}

RecourseTable recourse_table(const smip::SmipInstance& inst) {
  RecourseTable table;
  table.points = feasible_binary_points(inst);
  table.value.resize(static_cast<std::size_t>(inst.num_scenarios()));
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    for (const auto& x : table.points) table.value[static_cast<std::size_t>(s)].push_back(smip::second_stage_value(inst, s, x));
  }
  return table;
}

double qbar_enum(const RecourseTable& table, int s, std::span<const double> pi, double pi0) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.points.size(); ++k) {
    double v = pi0 * table.value[static_cast<std::size_t>(s)][k];
    for (std::size_t j = 0; j < pi.size(); ++j) v += pi[j] * table.points[k][j];
    best = std::min(best, v);
  }
  return best;
}

double enum_optimum(const smip::SmipInstance& inst, const RecourseTable& table) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < table.points.size(); ++k) {
    double v = 0.0;
    for (int j = 0; j < inst.num_first; ++j) v += inst.cost[static_cast<std::size_t>(j)] * table.points[k][static_cast<std::size_t>(j)];
    for (int s = 0; s < inst.num_scenarios(); ++s) {
      v += inst.scenarios[static_cast<std::size_t>(s)].probability * table.value[static_cast<std::size_t>(s)][k];
    }
    best = std::min(best, v);
  }
  return best;
}

std::vector<std::vector<double>> coefficient_grid(int n) {
  static constexpr double kLevels[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<std::vector<double>> out;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    std::vector<double> pi;
    for (int k : idx) pi.push_back(kLevels[k]);
    out.push_back(std::move(pi));
    int j = n - 1;
    while (j >= 0 && idx[static_cast<std::size_t>(j)] == 4) idx[static_cast<std::size_t>(j--)] = 0;
    if (j < 0) break;
    ++idx[static_cast<std::size_t>(j)];
  }
  return out;
}

}  // namespace lagcut::testing
