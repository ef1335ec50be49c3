#include "lagcut/milp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace lagcut::milp {
namespace {

enum class VarState : unsigned char { Basic, AtLower, AtUpper, FreeZero };

enum class PhaseResult { Optimal, Unbounded, Singular, IterationLimit };

constexpr int kRefactorInterval = 64;
constexpr double kDegenerateStep = 1e-12;
constexpr double kSingularPivot = 1e-12;

// Columns are ordered: n structural, m slacks (a_i x - s_i = b_i), m artificials.
class BoundedSimplex {
 public:
  BoundedSimplex(const MilpModel& model, const Tolerances& tol)
      : model_(model),
        tol_(tol),
        n_(model.num_vars()),
        m_(model.num_rows()),
        total_(n_ + 2 * m_) {}

  LpSolution solve() {
    LpSolution sol;
    build();
    if (!refactor()) return fail(sol, "singular initial basis");

    if (needs_phase_one()) {
      set_phase_one_costs();
      const PhaseResult r = iterate();
      if (r == PhaseResult::Singular) return fail(sol, "basis became singular in phase one");
      if (r == PhaseResult::IterationLimit) return limit(sol);
      double infeasibility = 0.0;
      for (int i = 0; i < m_; ++i) infeasibility += x_[static_cast<std::size_t>(art(i))];
      double bscale = 1.0;
      for (double v : b_) bscale = std::max(bscale, std::abs(v));
      if (infeasibility > 1e-7 * bscale) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iterations_;
        sol.diagnostic = fmt::format("phase one ended with infeasibility {:.3e}", infeasibility);
        return sol;
      }
    }
    retire_artificials();
    if (!refactor()) return fail(sol, "singular basis after phase one");

    set_phase_two_costs();
    for (int round = 0; round < 4; ++round) {
      const PhaseResult r = iterate();
      if (r == PhaseResult::Singular) return fail(sol, "basis became singular in phase two");
      if (r == PhaseResult::IterationLimit) return limit(sol);
      if (r == PhaseResult::Unbounded) {
        sol.status = LpStatus::Unbounded;
        sol.iterations = iterations_;
        return sol;
      }
      if (!refactor()) return fail(sol, "singular basis at termination");
      compute_duals();
      if (!has_entering_candidate()) break;
    }

    const double infeas = primal_infeasibility();
    if (infeas > 1e-6) {
      return fail(sol, fmt::format("final basis violates bounds by {:.3e}", infeas));
    }

    sol.status = LpStatus::Optimal;
    sol.iterations = iterations_;
    sol.primal.assign(x_.begin(), x_.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      auto& v = sol.primal[static_cast<std::size_t>(j)];
      v = std::clamp(v, model_.lower()[static_cast<std::size_t>(j)], model_.upper()[static_cast<std::size_t>(j)]);
    }
    sol.objective = model_.evaluate(sol.primal);
    sol.dual = y_;
    sol.reduced_cost.resize(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) sol.reduced_cost[static_cast<std::size_t>(j)] = reduced_cost(j);
    return sol;
  }

 private:
  int slack(int i) const { return n_ + i; }
  int art(int i) const { return n_ + m_ + i; }

  static std::size_t u(int i) { return static_cast<std::size_t>(i); }

  double& binv(int r, int c) { return binv_[u(r) * u(m_) + u(c)]; }
  double binv(int r, int c) const { return binv_[u(r) * u(m_) + u(c)]; }

  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (const auto& [row, val] : cols_[u(j)]) f(row, val);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      f(j - n_ - m_, art_sign_[u(j - n_ - m_)]);
    }
  }

  void build() {
    cols_.assign(u(n_), {});
    b_.resize(u(m_));
    for (int i = 0; i < m_; ++i) {
      const Row& row = model_.rows()[u(i)];
      b_[u(i)] = row.rhs;
      for (const Term& t : row.terms) {
        if (t.coef != 0.0) cols_[u(t.var)].emplace_back(i, t.coef);
      }
    }
    // Merge duplicate entries within a column.
    for (auto& col : cols_) {
      std::sort(col.begin(), col.end());
      std::vector<std::pair<int, double>> merged;
      for (const auto& e : col) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      col.swap(merged);
    }

    lo_.assign(u(total_), 0.0);
    hi_.assign(u(total_), kInf);
    for (int j = 0; j < n_; ++j) {
      lo_[u(j)] = model_.lower()[u(j)];
      hi_[u(j)] = model_.upper()[u(j)];
    }
    for (int i = 0; i < m_; ++i) {
      if (model_.rows()[u(i)].sense == Sense::Equal) hi_[u(slack(i))] = 0.0;
    }
    art_sign_.assign(u(m_), 1.0);
    state_.assign(u(total_), VarState::AtLower);
    x_.assign(u(total_), 0.0);
    head_.assign(u(m_), -1);

    for (int j = 0; j < n_; ++j) {
      if (std::isfinite(lo_[u(j)])) {
        state_[u(j)] = VarState::AtLower;
        x_[u(j)] = lo_[u(j)];
      } else if (std::isfinite(hi_[u(j)])) {
        state_[u(j)] = VarState::AtUpper;
        x_[u(j)] = hi_[u(j)];
      } else {
        state_[u(j)] = VarState::FreeZero;
        x_[u(j)] = 0.0;
      }
    }

    std::vector<double> activity(u(m_), 0.0);
    for (int j = 0; j < n_; ++j) {
      if (x_[u(j)] == 0.0) continue;
      for (const auto& [row, val] : cols_[u(j)]) activity[u(row)] += val * x_[u(j)];
    }
    for (int i = 0; i < m_; ++i) {
      const double resid = b_[u(i)] - activity[u(i)];
      const bool ge = model_.rows()[u(i)].sense == Sense::GreaterEqual;
      if (ge && resid <= 0.0) {
        head_[u(i)] = slack(i);
        state_[u(slack(i))] = VarState::Basic;
        x_[u(slack(i))] = -resid;
        hi_[u(art(i))] = 0.0;
      } else {
        art_sign_[u(i)] = resid >= 0.0 ? 1.0 : -1.0;
        head_[u(i)] = art(i);
        state_[u(art(i))] = VarState::Basic;
        x_[u(art(i))] = std::abs(resid);
      }
    }
    cost_.assign(u(total_), 0.0);
    binv_.assign(u(m_) * u(m_), 0.0);
  }

  bool needs_phase_one() const {
    for (int i = 0; i < m_; ++i) {
      if (head_[u(i)] >= n_ + m_ && x_[u(head_[u(i)])] > 0.0) return true;
    }
    return false;
  }

  void set_phase_one_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int i = 0; i < m_; ++i) cost_[u(art(i))] = 1.0;
    bland_ = false;
    degenerate_run_ = 0;
  }

  void set_phase_two_costs() {
    std::fill(cost_.begin(), cost_.end(), 0.0);
    for (int j = 0; j < n_; ++j) cost_[u(j)] = model_.objective()[u(j)];
    bland_ = false;
    degenerate_run_ = 0;
  }

  // Fixes every artificial at zero and pivots basic artificials out where a
  // replacement column exists.
  void retire_artificials() {
    for (int i = 0; i < m_; ++i) {
      const int a = art(i);
      hi_[u(a)] = 0.0;
      if (state_[u(a)] != VarState::Basic) {
        state_[u(a)] = VarState::AtLower;
        x_[u(a)] = 0.0;
      }
    }
    for (int r = 0; r < m_; ++r) {
      const int var = head_[u(r)];
      if (var < n_ + m_) continue;
      x_[u(var)] = 0.0;
      int best = -1;
      double best_abs = 1e-7;
      for (int j = 0; j < n_ + m_; ++j) {
        if (state_[u(j)] == VarState::Basic) continue;
        double v = 0.0;
        for_column(j, [&](int row, double val) { v += binv(r, row) * val; });
        if (std::abs(v) > best_abs) {
          best_abs = std::abs(v);
          best = j;
        }
      }
      if (best < 0) continue;
      std::vector<double> alpha(u(m_));
      ftran(best, alpha);
      pivot(r, best, alpha);
      state_[u(var)] = VarState::AtLower;
    }
  }

  bool refactor() {
    pivots_since_refactor_ = 0;
    if (m_ == 0) return true;
    std::vector<double> mat(u(m_) * u(m_), 0.0);
    for (int r = 0; r < m_; ++r) {
      for_column(head_[u(r)], [&](int row, double val) { mat[u(row) * u(m_) + u(r)] += val; });
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (int i = 0; i < m_; ++i) binv(i, i) = 1.0;
    // Gauss-Jordan with partial pivoting on [B | I].
    for (int c = 0; c < m_; ++c) {
      int piv = c;
      double best = std::abs(mat[u(c) * u(m_) + u(c)]);
      for (int r = c + 1; r < m_; ++r) {
        const double v = std::abs(mat[u(r) * u(m_) + u(c)]);
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (best < kSingularPivot) return false;
      if (piv != c) {
        for (int k = 0; k < m_; ++k) {
          std::swap(mat[u(piv) * u(m_) + u(k)], mat[u(c) * u(m_) + u(k)]);
          std::swap(binv(piv, k), binv(c, k));
        }
      }
      const double inv = 1.0 / mat[u(c) * u(m_) + u(c)];
      for (int k = 0; k < m_; ++k) {
        mat[u(c) * u(m_) + u(k)] *= inv;
        binv(c, k) *= inv;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == c) continue;
        const double f = mat[u(r) * u(m_) + u(c)];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          mat[u(r) * u(m_) + u(k)] -= f * mat[u(c) * u(m_) + u(k)];
          binv(r, k) -= f * binv(c, k);
        }
      }
    }
    recompute_basic_values();
    return true;
  }

  void recompute_basic_values() {
    std::vector<double> rhs = b_;
    for (int j = 0; j < total_; ++j) {
      if (state_[u(j)] == VarState::Basic || x_[u(j)] == 0.0) continue;
      const double xj = x_[u(j)];
      for_column(j, [&](int row, double val) { rhs[u(row)] -= val * xj; });
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0.0;
      for (int k = 0; k < m_; ++k) v += binv(r, k) * rhs[u(k)];
      x_[u(head_[u(r)])] = v;
    }
  }

  void ftran(int j, std::vector<double>& alpha) const {
    std::fill(alpha.begin(), alpha.end(), 0.0);
    for_column(j, [&](int row, double val) {
      for (int r = 0; r < m_; ++r) alpha[u(r)] += binv(r, row) * val;
    });
  }

  void compute_duals() {
    y_.assign(u(m_), 0.0);
    for (int r = 0; r < m_; ++r) {
      const double cb = cost_[u(head_[u(r)])];
      if (cb == 0.0) continue;
      for (int k = 0; k < m_; ++k) y_[u(k)] += cb * binv(r, k);
    }
  }

  double reduced_cost(int j) const {
    double d = cost_[u(j)];
    for_column(j, [&](int row, double val) { d -= y_[u(row)] * val; });
    return d;
  }

  // Returns entering variable and direction (+1 increase, -1 decrease).
  std::pair<int, int> choose_entering() const {
    int best = -1;
    int best_dir = 0;
    double best_score = 0.0;
    for (int j = 0; j < total_; ++j) {
      const VarState s = state_[u(j)];
      if (s == VarState::Basic) continue;
      if (lo_[u(j)] == hi_[u(j)]) continue;
      const double d = reduced_cost(j);
      int dir = 0;
      if ((s == VarState::AtLower || s == VarState::FreeZero) && d < -tol_.optimality) dir = 1;
      if ((s == VarState::AtUpper || s == VarState::FreeZero) && d > tol_.optimality) dir = -1;
      if (dir == 0) continue;
      if (bland_) return {j, dir};
      const double score = std::abs(d);
      if (score > best_score) {
        best_score = score;
        best = j;
        best_dir = dir;
      }
    }
    return {best, best_dir};
  }

  bool has_entering_candidate() const { return choose_entering().first >= 0; }

  void pivot(int r, int q, const std::vector<double>& alpha) {
    const double piv = alpha[u(r)];
    for (int k = 0; k < m_; ++k) binv(r, k) /= piv;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[u(i)] == 0.0) continue;
      const double f = alpha[u(i)];
      for (int k = 0; k < m_; ++k) binv(i, k) -= f * binv(r, k);
    }
    state_[u(q)] = VarState::Basic;
    head_[u(r)] = q;
    ++pivots_since_refactor_;
  }

  PhaseResult iterate() {
    const int limit = 20000 + 200 * (n_ + m_);
    std::vector<double> alpha(u(m_));
    while (true) {
      if (iterations_ >= limit) return PhaseResult::IterationLimit;
      if (pivots_since_refactor_ >= kRefactorInterval && !refactor()) return PhaseResult::Singular;
      compute_duals();
      const auto [q, dir] = choose_entering();
      if (q < 0) return PhaseResult::Optimal;
      ++iterations_;
      ftran(q, alpha);

      double t = kInf;
      if (std::isfinite(lo_[u(q)]) && std::isfinite(hi_[u(q)])) t = hi_[u(q)] - lo_[u(q)];
      const int leave = bland_ ? ratio_test_bland(alpha, dir, t) : ratio_test_harris(alpha, dir, t);
      const double leave_alpha = leave >= 0 ? alpha[u(leave)] * dir : 0.0;
      if (!std::isfinite(t)) return PhaseResult::Unbounded;

      degenerate_run_ = t <= kDegenerateStep ? degenerate_run_ + 1 : 0;
      if (degenerate_run_ >= kBlandThreshold) bland_ = true;

      x_[u(q)] += dir * t;
      for (int r = 0; r < m_; ++r) x_[u(head_[u(r)])] -= t * alpha[u(r)] * dir;

      if (leave < 0) {
        state_[u(q)] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
        x_[u(q)] = dir > 0 ? hi_[u(q)] : lo_[u(q)];
        continue;
      }
      const int out = head_[u(leave)];
      if (leave_alpha > 0.0) {
        state_[u(out)] = VarState::AtLower;
        x_[u(out)] = lo_[u(out)];
      } else {
        state_[u(out)] = VarState::AtUpper;
        x_[u(out)] = hi_[u(out)];
      }
      pivot(leave, q, alpha);
    }
  }

  // Step limit of basic row r when the entering variable moves by one unit
  // with pivot entry a (already multiplied by the direction); `slack` widens
  // the bound.
  double row_limit(int r, double a, double slack) const {
    const int var = head_[u(r)];
    if (a > 0.0) {
      if (!std::isfinite(lo_[u(var)])) return kInf;
      return (x_[u(var)] - lo_[u(var)] + slack) / a;
    }
    if (!std::isfinite(hi_[u(var)])) return kInf;
    return (hi_[u(var)] - x_[u(var)] + slack) / (-a);
  }

  // Textbook ratio test with smallest-index ties; used under Bland's rule.
  int ratio_test_bland(const std::vector<double>& alpha, int dir, double& t) const {
    int leave = -1;
    for (int r = 0; r < m_; ++r) {
      const double a = alpha[u(r)] * dir;
      if (std::abs(a) < tol_.pivot) continue;
      const double lim = std::max(row_limit(r, a, 0.0), 0.0);
      if (lim < t - kDegenerateStep || (lim <= t + kDegenerateStep && leave >= 0 && head_[u(r)] < head_[u(leave)])) {
        t = lim;
        leave = r;
      }
    }
    return leave;
  }

  // Two-pass Harris test: bounds relaxed by the feasibility tolerance give
  // the admissible step, then the largest pivot within it leaves.
  int ratio_test_harris(const std::vector<double>& alpha, int dir, double& t) const {
    double amax = 0.0;
    for (int r = 0; r < m_; ++r) amax = std::max(amax, std::abs(alpha[u(r)]));
    const double piv_tol = std::max(tol_.pivot, 1e-11 * amax);
    double relaxed = kInf;
    for (int r = 0; r < m_; ++r) {
      const double a = alpha[u(r)] * dir;
      if (std::abs(a) < piv_tol) continue;
      relaxed = std::min(relaxed, row_limit(r, a, tol_.feasibility));
    }
    if (t <= relaxed) return -1;
    int leave = -1;
    double best = 0.0;
    double step = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double a = alpha[u(r)] * dir;
      if (std::abs(a) < piv_tol) continue;
      const double lim = std::max(row_limit(r, a, 0.0), 0.0);
      if (lim <= relaxed && std::abs(a) > best) {
        best = std::abs(a);
        leave = r;
        step = lim;
      }
    }
    if (leave >= 0) t = step;
    return leave;
  }

  double primal_infeasibility() const {
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
      const int var = head_[u(r)];
      worst = std::max({worst, lo_[u(var)] - x_[u(var)], x_[u(var)] - hi_[u(var)]});
    }
    return worst;
  }

  LpSolution& fail(LpSolution& sol, std::string why) const {
    sol.status = LpStatus::NumericalError;
    sol.iterations = iterations_;
    sol.diagnostic = std::move(why);
    return sol;
  }

  LpSolution& limit(LpSolution& sol) const {
    sol.status = LpStatus::IterationLimit;
    sol.iterations = iterations_;
    sol.diagnostic = "simplex iteration limit reached";
    return sol;
  }

  const MilpModel& model_;
  const Tolerances& tol_;
  int n_;
  int m_;
  int total_;

  std::vector<std::vector<std::pair<int, double>>> cols_;
  std::vector<double> b_;
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> cost_;
  std::vector<double> art_sign_;

  std::vector<VarState> state_;
  std::vector<double> x_;
  std::vector<int> head_;
  std::vector<double> binv_;
  std::vector<double> y_;

  int pivots_since_refactor_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const MilpModel& model, const Tolerances& tol) {
  model.check();
  return BoundedSimplex(model, tol).solve();
}

}  // namespace lagcut::milp
