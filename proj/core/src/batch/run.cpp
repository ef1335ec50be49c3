#include "lagcut/batch/run.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <regex>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lagcut/error.hpp"

namespace lagcut::batch {

const char* to_string(Paradigm p) { return p == Paradigm::Exact ? "Exact" : "RstrMIP"; }

const char* to_string(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::EpsOptimal: return "eps_optimal";
    case RunStatus::TimeLimit: return "time_limit";
    case RunStatus::Stalled: return "stalled";
  }
  return "unknown";
}

namespace {

RunStatus parse_status(const std::string& s) {
  for (RunStatus st : {RunStatus::Running, RunStatus::EpsOptimal, RunStatus::TimeLimit, RunStatus::Stalled}) {
    if (s == to_string(st)) return st;
  }
  throw Error(fmt::format("unknown run status '{}'", s));
}

}  // namespace

void RunConfig::check() const {
  auto fail = [](std::string msg) { throw Error("invalid run config: " + msg); };
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) fail(fmt::format("epsilon = {} must be >= 0", epsilon));
  if (!(beta > 0.0 && beta <= 1.0)) fail(fmt::format("beta = {} outside (0, 1]", beta));
  if (!(delta >= 0.0 && delta < 1.0)) fail(fmt::format("delta = {} outside [0, 1)", delta));
  if (!(stats_delta >= 0.0 && stats_delta < 1.0)) fail(fmt::format("stats_delta = {} outside [0, 1)", stats_delta));
  if (subspace_size < 1) fail(fmt::format("K = {} must be >= 1", subspace_size));
  if (!(radius > 0.0)) fail(fmt::format("radius = {} must be positive", radius));
  if (!(time_limit > 0.0)) fail(fmt::format("time limit = {} must be positive", time_limit));
  if (stall_window < 1) fail("stall window must be >= 1");
  if ((averaged_cuts || collect_stats) && !pi0_fixed) fail("averaged cuts need pi0 fixed to 1");
}

std::string RunConfig::method_name() const {
  if (beta >= 1.0) return fmt::format("{}-Tra", to_string(paradigm));
  return fmt::format("{}-Lbb({:g})", to_string(paradigm), beta);
}

void apply_method_name(RunConfig& cfg, const std::string& name) {
  static const std::regex re(R"(^(Exact|RstrMIP)-(Tra|Lbb\(([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\))$)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) {
    throw Error(fmt::format("method '{}' does not match Exact|RstrMIP - Tra|Lbb(beta)", name));
  }
  cfg.paradigm = m[1] == "Exact" ? Paradigm::Exact : Paradigm::RstrMIP;
  cfg.beta = m[2] == "Tra" ? 1.0 : std::stod(m[3]);
  if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw Error(fmt::format("method '{}' has beta outside (0, 1]", name));
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
  out << "time_s,iter,batch,lb,cuts_benders,cuts_lagrangian,cuts_averaged,status\n";
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const TrajectoryRecord& r = traj.records[i];
    const RunStatus st = i + 1 == traj.records.size() ? traj.status : RunStatus::Running;
    fmt::print(out, "{:.6f},{},{},{:.17g},{},{},{},{}\n", r.time, r.iteration, r.batch, r.lb, r.cuts_benders,
               r.cuts_lagrangian, r.cuts_averaged, to_string(st));
  }
}

Trajectory read_trajectory_csv(std::istream& in) {
  Trajectory traj;
  std::string line;
  if (!std::getline(in, line) || line.rfind("time_s,", 0) != 0) throw Error("trajectory CSV lacks its header");
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 8) throw Error(fmt::format("trajectory CSV line {} has {} fields, expected 8", lineno, f.size()));
    try {
      TrajectoryRecord r;
      r.time = std::stod(f[0]);
      r.iteration = std::stoi(f[1]);
      r.batch = std::stoi(f[2]);
      r.lb = std::stod(f[3]);
      r.cuts_benders = std::stol(f[4]);
      r.cuts_lagrangian = std::stol(f[5]);
      r.cuts_averaged = std::stol(f[6]);
      traj.records.push_back(r);
      traj.status = parse_status(f[7]);
    } catch (const std::logic_error&) {
      throw Error(fmt::format("trajectory CSV line {} is not numeric", lineno));
    }
  }
  return traj;
}

lagrangian::SeparationDomain run_domain(const RunConfig& cfg, const benders::MasterState& state, int s) {
  if (cfg.paradigm == Paradigm::Exact) return lagrangian::SeparationDomain::box(cfg.radius, cfg.pi0_fixed);
  const auto& pool = state.pool(s);
  const bool any = std::any_of(pool.begin(), pool.end(),
                               [](const benders::Cut& c) { return c.kind == benders::CutKind::Benders; });
  lagrangian::SeparationDomain dom =
      any ? lagrangian::restricted_domain(state, s, cfg.subspace_size, cfg.radius)
          : lagrangian::SeparationDomain::span({}, cfg.radius);
  dom.pi0_fixed = cfg.pi0_fixed;
  return dom;
}

namespace {

class Orchestrator {
 public:
  Orchestrator(const smip::SmipInstance& inst, const RunConfig& cfg, const Context& ctx, double t_start)
      : inst_(inst), cfg_(cfg), ctx_(ctx), t_start_(t_start), epi_(static_cast<std::size_t>(inst.num_scenarios())),
        stats_epi_(static_cast<std::size_t>(inst.num_scenarios())) {}

  RunResult drive(benders::MasterState state) {
    res_.state = std::move(state);
    t_lag_ = ctx_.now();
    record(-1);
    BatchSchedule schedule = make_batches(inst_.num_scenarios(), cfg_.beta, cfg_.seed, cfg_.policy);
    int last_stop = -1;
    int stall = 0;
    RunStatus status = RunStatus::Running;
    while (status == RunStatus::Running) {
      if (out_of_time()) {
        status = RunStatus::TimeLimit;
        break;
      }
      if (cfg_.paradigm == Paradigm::RstrMIP) {
        status = benders_phase(stall);
        if (status != RunStatus::Running) break;
      }
      const std::vector<int> order = next_order(schedule, last_stop);
      const int trigger = sweep(schedule, order);
      if (trigger == kTimedOut) {
        status = RunStatus::TimeLimit;
        break;
      }
      if (trigger < 0) {
        status = RunStatus::EpsOptimal;
        break;
      }
      last_stop = trigger;
      if (cfg_.averaged_cuts || cfg_.collect_stats) averaged_step();
      status = resolve(trigger, stall);
    }
    res_.trajectory.status = status;
    record(-1);
    res_.total_time = ctx_.now() - t_start_;
    return std::move(res_);
  }

 private:
  static constexpr int kTimedOut = -2;

  bool out_of_time() const { return ctx_.now() - t_start_ >= cfg_.time_limit; }

  void record(int batch) {
    TrajectoryRecord r;
    r.time = ctx_.now() - t_lag_;
    r.iteration = static_cast<int>(res_.master_resolves);
    r.batch = batch;
    r.lb = res_.state.lower_bound;
    // the reported bound is the best one seen; LP noise may dip the raw value
    if (!res_.trajectory.records.empty()) r.lb = std::max(r.lb, res_.trajectory.records.back().lb);
    r.cuts_benders = res_.state.cut_count(benders::CutKind::Benders);
    r.cuts_lagrangian = res_.state.cut_count(benders::CutKind::Lagrangian);
    r.cuts_averaged = res_.state.cut_count(benders::CutKind::Averaged);
    res_.trajectory.records.push_back(r);
  }

  RunStatus resolve(int batch, int& stall) {
    if (res_.master_resolves >= cfg_.max_resolves) return RunStatus::Stalled;
    const double before = res_.trajectory.records.back().lb;
    benders::solve_master(inst_, res_.state, cfg_.benders.master, ctx_);
    ++res_.master_resolves;
    record(batch);
    if (res_.trajectory.records.back().lb - before < cfg_.stall_tol) {
      if (++stall >= cfg_.stall_window) return RunStatus::Stalled;
    } else {
      stall = 0;
    }
    return RunStatus::Running;
  }

  RunStatus benders_phase(int& stall) {
    benders::BendersConfig bcfg = cfg_.benders;
    bcfg.cut_tol = cfg_.cut_tol;
    while (true) {
      if (out_of_time()) return RunStatus::TimeLimit;
      if (benders::benders_round(inst_, res_.state, bcfg, ctx_) == 0) return RunStatus::Running;
      const RunStatus st = resolve(-1, stall);
      if (st != RunStatus::Running) return st;
    }
  }

  // Returns the batch that triggered the stopping criterion, -1 when the full
  // sweep stayed below eps, or kTimedOut.
  int sweep(const BatchSchedule& schedule, const std::vector<int>& order) {
    ++res_.sweeps;
    double acc = 0.0;
    processed_.assign(static_cast<std::size_t>(inst_.num_scenarios()), false);
    sweep_cuts_.clear();
    for (int t : order) {
      for (int s : schedule.batches[static_cast<std::size_t>(t)]) {
        if (out_of_time()) {
          res_.last_sweep_violation = acc;
          return kTimedOut;
        }
        const auto su = static_cast<std::size_t>(s);
        const lagrangian::SeparationDomain dom = run_domain(cfg_, res_.state, s);
        lagrangian::SeparationResult sep = lagrangian::separate_cut(
            inst_, s, res_.state.x, res_.state.theta[su], dom, cfg_.delta, epi_[su], ctx_, cfg_.separation);
        ++res_.separations;
        processed_[su] = true;
        sep.cut.birth_iteration = res_.state.iteration;
        sweep_cuts_.push_back(sep.cut);
        if (sep.violation > 0.0) {
          acc += inst_.scenarios[su].probability * sep.violation;
          res_.state.add_cut(std::move(sep.cut));
        }
      }
      if (stopping_triggered(acc, cfg_.epsilon)) {
        res_.last_sweep_violation = acc;
        return t;
      }
    }
    res_.last_sweep_violation = acc;
    return -1;
  }

  void averaged_step() {
    const std::vector<double> pi_bar = averaged::average_pi(sweep_cuts_);
    for (int s = 0; s < inst_.num_scenarios(); ++s) {
      const auto su = static_cast<std::size_t>(s);
      if (processed_[su]) continue;
      auto& sample = cfg_.averaged_cuts ? epi_[su] : stats_epi_[su];
      benders::Cut cut = averaged::make_averaged_cut(inst_, s, pi_bar, ctx_, &sample, res_.state.iteration);
      const double viol = benders::cut_violation(cut, res_.state.x, res_.state.theta[su]);
      if (cfg_.collect_stats) {
        res_.strength_records.push_back(averaged::strength_record(inst_, s, res_.state.x, res_.state.theta[su], cut,
                                                                  run_domain(cfg_, res_.state, s), cfg_.stats_delta,
                                                                  ctx_, &stats_epi_[su]));
      }
      if (cfg_.averaged_cuts && viol > cfg_.cut_tol) res_.state.add_cut(std::move(cut));
    }
  }

  const smip::SmipInstance& inst_;
  const RunConfig& cfg_;
  const Context& ctx_;
  double t_start_ = 0.0;
  double t_lag_ = 0.0;
  RunResult res_;
  std::vector<lagrangian::SampledEpigraph> epi_;
  std::vector<lagrangian::SampledEpigraph> stats_epi_;
  std::vector<bool> processed_;
  std::vector<benders::Cut> sweep_cuts_;
};

}  // namespace

RunResult run(const smip::SmipInstance& inst, const RunConfig& cfg, const Context& ctx) {
  cfg.check();
  smip::require_valid(inst);
  WallClock wall;
  Context local = ctx;
  if (local.clock == nullptr) local.clock = &wall;
  const double t0 = local.now();
  benders::BendersConfig bcfg = cfg.benders;
  bcfg.cut_tol = cfg.cut_tol;
  benders::MasterState state = benders::benders_root_loop(inst, bcfg, local);
  const double benders_time = local.now() - t0;
  RunResult res = Orchestrator(inst, cfg, local, t0).drive(std::move(state));
  res.benders_time = benders_time;
  return res;
}

RunResult run_from(const smip::SmipInstance& inst, const RunConfig& cfg, benders::MasterState state,
                   const Context& ctx) {
  cfg.check();
  smip::require_valid(inst);
  WallClock wall;
  Context local = ctx;
  if (local.clock == nullptr) local.clock = &wall;
  return Orchestrator(inst, cfg, local, local.now()).drive(std::move(state));
}

Certificate eps_optimality_certificate(const smip::SmipInstance& inst, const benders::MasterState& state, double eps,
                                       const DomainProvider& domain, double delta, const Context& ctx) {
  Certificate cert;
  cert.threshold = eps / (1.0 - delta);
  for (int s = 0; s < inst.num_scenarios(); ++s) {
    const auto su = static_cast<std::size_t>(s);
    const auto sep = lagrangian::separate_cut(inst, s, state.x, state.theta[su], domain(s), delta, ctx);
    cert.weighted_violation += inst.scenarios[su].probability * std::max(sep.violation, 0.0);
  }
  cert.ok = cert.weighted_violation <= cert.threshold + 1e-9;
  return cert;
}

Certificate eps_optimality_certificate(const smip::SmipInstance& inst, const benders::MasterState& state, double eps,
                                       const lagrangian::SeparationDomain& domain, double delta, const Context& ctx) {
  return eps_optimality_certificate(inst, state, eps, [&](int) { return domain; }, delta, ctx);
}

}  // namespace lagcut::batch
