#include <doctest.h>

#include <cmath>

#include "lagcut/benders/benders.hpp"
#include "lagcut/error.hpp"
#include "lagcut/milp/simplex.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::benders;

TEST_SUITE("benders") {

TEST_CASE("subproblem values and duals on the fixture") {
  const auto t1 = testing::make_t1();
  auto r = solve_benders_subproblem(t1, 1, std::vector<double>{0.0});
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.dual.at(0) == doctest::Approx(1.0));
  r = solve_benders_subproblem(t1, 0, std::vector<double>{1.0});
  CHECK(r.value == doctest::Approx(0.0));
  CHECK(r.dual.at(0) == doctest::Approx(0.0));
  r = solve_benders_subproblem(t1, 1, std::vector<double>{0.5});
  CHECK(r.value == doctest::Approx(1.5));
  CHECK(r.dual.at(0) == doctest::Approx(1.0));
}

TEST_CASE("subproblem infeasibility names the scenario") {
  auto inst = testing::make_t1();
  inst.scenarios[1].recourse = SparseMatrix(1, 1);
  inst.scenarios[1].rhs = {5.0};
  try {
    solve_benders_subproblem(inst, 1, std::vector<double>{0.0});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("scenario 2") != std::string::npos);
  }
}

TEST_CASE("cuts from duals") {
  const auto t1 = testing::make_t1();
  const Cut c = benders_cut_from_dual(t1, 1, std::vector<double>{1.0});
  CHECK(c.pi == std::vector<double>{1.0});
  CHECK(c.pi0 == 1.0);
  CHECK(c.rhs == 2.0);
  const Cut z = benders_cut_from_dual(t1, 0, std::vector<double>{0.0});
  CHECK(z.pi == std::vector<double>{0.0});
  CHECK(z.rhs == 0.0);
  CHECK_THROWS_AS(benders_cut_from_dual(t1, 1, std::vector<double>{2.0}), Error);
  CHECK_THROWS_AS(benders_cut_from_dual(t1, 1, std::vector<double>{-1.0}), Error);
}

TEST_CASE("cut violation arithmetic") {
  Cut c;
  c.scenario = 1;
  c.pi = {1.0};
  c.rhs = 2.0;
  CHECK(cut_violation(c, std::vector<double>{0.0}, 0.0) == 2.0);
  CHECK(cut_violation(c, std::vector<double>{0.0}, 2.0) == 0.0);
  CHECK(cut_violation(c, std::vector<double>{1.0}, 2.0) == -1.0);
}

TEST_CASE("master solves on the fixture") {
  const auto t1 = testing::make_t1();
  MasterState state(t1);
  solve_master(t1, state, {});
  CHECK(state.lower_bound == doctest::Approx(0.0));
  CHECK(state.x[0] == doctest::Approx(0.0));
  CHECK(state.lb_history.size() == 1);

  Cut a;
  a.scenario = 1;
  a.pi = {1.0};
  a.rhs = 2.0;
  Cut b = a;
  b.scenario = 0;
  b.rhs = 1.0;
  CHECK(state.add_cut(a));
  CHECK(state.add_cut(b));
  solve_master(t1, state, {});
  CHECK(state.lower_bound == doctest::Approx(1.5));

  Cut implied = a;
  implied.rhs = 1.0;
  implied.pi = {0.5};
  state.add_cut(implied);
  solve_master(t1, state, {});
  CHECK(state.lower_bound == doctest::Approx(1.5));
}

TEST_CASE("pool dedup") {
  const auto t1 = testing::make_t1();
  MasterState state(t1);
  Cut a;
  a.scenario = 0;
  a.pi = {1.0};
  a.rhs = 1.0;
  CHECK(state.add_cut(a));
  CHECK_FALSE(state.add_cut(a));
  Cut weaker = a;
  weaker.rhs = 0.5;
  CHECK_FALSE(state.add_cut(weaker));
  Cut stronger = a;
  stronger.rhs = 2.0;
  CHECK(state.add_cut(stronger));
  CHECK(state.pool(0).size() == 1);
  CHECK(state.pool(0)[0].rhs == 2.0);
  CHECK(state.cut_count(CutKind::Benders) == 1);
}

TEST_CASE("root loop on the fixture") {
  const auto t1 = testing::make_t1();
  milp::CountingBackend counter(milp::bundled_backend());
  Context ctx;
  ctx.backend = &counter;
  const MasterState state = benders_root_loop(t1, {}, ctx);
  CHECK(state.lower_bound == doctest::Approx(1.5));
  CHECK(state.iteration <= 4);
  CHECK_FALSE(state.truncated);
}

TEST_CASE("root loop with free subproblems") {
  auto inst = testing::make_t1();
  for (auto& sc : inst.scenarios) sc.rhs = {-1.0};
  const MasterState state = benders_root_loop(inst);
  CHECK(state.lower_bound == doctest::Approx(0.0));
  CHECK(state.total_cuts() == 0);
}

TEST_CASE("root loop reaches the extensive relaxation") {
  testing::Rng rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = testing::uniform_int(rng, 1, 5);
    shape.scenarios = testing::uniform_int(rng, 1, 5);
    shape.cardinality_row = trial % 2 == 0;
    shape.integer_recourse = trial % 3 == 0;
    const auto inst = testing::random_smip(rng, shape);
    const MasterState state = benders_root_loop(inst);
    const milp::LpSolution lp = milp::solve_lp(milp::relax_integrality(smip::extensive_form(inst)));
    REQUIRE(lp.optimal());
    CHECK(state.lower_bound == doctest::Approx(lp.objective).epsilon(1e-6));
    CHECK(max_benders_violation(inst, state) <= 1e-6);
    for (std::size_t k = 1; k < state.lb_history.size(); ++k) {
      CHECK(state.lb_history[k].lower_bound >= state.lb_history[k - 1].lower_bound - 1e-9);
    }
    for (const auto& pool : state.pools()) {
      for (const Cut& c : pool) {
        CHECK(cut_violation(c, state.x, state.theta[static_cast<std::size_t>(c.scenario)]) <= 1e-6);
        for (int k = 0; k < 20; ++k) {
          std::vector<double> x(static_cast<std::size_t>(inst.num_first));
          for (double& v : x) v = testing::uniform(rng, 0.0, 1.0);
          const double f = smip::second_stage_lp_value(inst, c.scenario, x);
          CHECK(c.lhs(x, f) >= c.rhs - 1e-8);
        }
      }
    }
  }
}

}  // TEST_SUITE
