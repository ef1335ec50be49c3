#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "lagcut/batch/run.hpp"
#include "lagcut/benders/benders.hpp"
#include "lagcut/lab/generate.hpp"
#include "lagcut/lagrangian/separation.hpp"
#include "lagcut/milp/backend.hpp"

namespace {

using namespace lagcut;

// min c x, A x >= b with A, b, c > 0: always feasible and bounded
milp::MilpModel random_lp(int n, int m, bool integral, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(0.1, 5.0);
  milp::MilpModel model;
  for (int j = 0; j < n; ++j) model.add_variable(coef(rng), 0.0, integral ? 10.0 : milp::kInf, integral);
  for (int i = 0; i < m; ++i) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (double& a : row) a = std::bernoulli_distribution(0.5)(rng) ? coef(rng) : 0.0;
    model.add_row(milp::Row::from_dense(row, milp::Sense::GreaterEqual, 2.0 * coef(rng)));
  }
  return model;
}

smip::SmipInstance desk_sslp(int scenarios) {
  lab::FamilyParams p;
  p.family = lab::Family::Sslp;
  p.scenarios = scenarios;
  return lab::generate(p);
}

void BM_SolveLp(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const milp::MilpModel model = random_lp(n, n / 2, false, 7);
  const milp::SolverBackend& be = milp::bundled_backend();
  for (auto _ : st) benchmark::DoNotOptimize(be.solve_lp(model));
}
BENCHMARK(BM_SolveLp)->Arg(20)->Arg(60)->Arg(150);

void BM_SolveMilp(benchmark::State& st) {
  const milp::MilpModel model = random_lp(static_cast<int>(st.range(0)), 8, true, 11);
  const milp::SolverBackend& be = milp::bundled_backend();
  milp::MipOptions opts;
  for (auto _ : st) benchmark::DoNotOptimize(be.solve_milp(model, opts));
}
BENCHMARK(BM_SolveMilp)->Arg(10)->Arg(20);

void BM_EvaluateQbar(benchmark::State& st) {
  const smip::SmipInstance inst = desk_sslp(4);
  const std::vector<double> pi(static_cast<std::size_t>(inst.num_first), 0.5);
  for (auto _ : st) benchmark::DoNotOptimize(lagrangian::evaluate_qbar(inst, 0, pi, 1.0));
}
BENCHMARK(BM_EvaluateQbar);

void BM_SeparateCut(benchmark::State& st) {
  const smip::SmipInstance inst = desk_sslp(4);
  const benders::MasterState root = benders::benders_root_loop(inst);
  const auto domain = lagrangian::SeparationDomain::box(100.0);
  for (auto _ : st) {
    benchmark::DoNotOptimize(lagrangian::separate_cut(inst, 0, root.x, root.theta[0], domain, 0.0));
  }
}
BENCHMARK(BM_SeparateCut)->Unit(benchmark::kMillisecond);

void BM_BatchRun(benchmark::State& st) {
  const smip::SmipInstance inst = desk_sslp(6);
  batch::RunConfig cfg;
  cfg.radius = 100.0;
  batch::apply_method_name(cfg, st.range(0) == 0 ? "Exact-Tra" : "Exact-Lbb(0.25)");
  for (auto _ : st) benchmark::DoNotOptimize(batch::run(inst, cfg));
}
BENCHMARK(BM_BatchRun)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
