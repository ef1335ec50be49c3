#include <doctest.h>

#include <cmath>

#include "lagcut/error.hpp"
#include "lagcut/milp/backend.hpp"
#include "lagcut/milp/branch_and_bound.hpp"
#include "lagcut/milp/lp_format.hpp"
#include "lagcut/milp/simplex.hpp"
#include "lagcut/smip/instance.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::milp;

TEST_SUITE("milp") {

TEST_CASE("single row lp reports value and dual") {
  MilpModel m;
  m.add_variable(1.0, 0.0, kInf);
  m.add_row(Row::from_dense(std::vector<double>{1.0}, Sense::GreaterEqual, 2.0));
  const LpSolution sol = solve_lp(m);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.objective == doctest::Approx(2.0));
  CHECK(sol.dual.at(0) == doctest::Approx(1.0));
}

TEST_CASE("bound attained with no rows") {
  MilpModel m;
  m.add_variable(1.0, 0.0, kInf);
  const LpSolution sol = solve_lp(m);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 0.0);
}

TEST_CASE("unbounded ray") {
  MilpModel m;
  m.add_variable(-1.0, 0.0, kInf);
  CHECK(solve_lp(m).status == LpStatus::Unbounded);
}

TEST_CASE("infeasible rows") {
  MilpModel m;
  m.add_variable(1.0, 0.0, 1.0);
  m.add_row(Row::from_dense(std::vector<double>{1.0}, Sense::GreaterEqual, 2.0));
  CHECK(solve_lp(m).status == LpStatus::Infeasible);
  m.set_integer(0, true);
  CHECK(solve_milp(m).status == MipStatus::Infeasible);
}

TEST_CASE("strong duality on random lps") {
  testing::Rng rng(20240611);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = testing::uniform_int(rng, 1, 12);
    const int m = testing::uniform_int(rng, 1, 12);
    const MilpModel model = testing::random_lp(rng, n, m);
    const LpSolution sol = solve_lp(model);
    INFO("trial " << trial);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(model.max_violation(sol.primal) <= 1e-8);
    const testing::DualCheck dual = testing::dual_objective(model, sol.dual);
    CHECK(dual.infeasibility <= 1e-8);
    CHECK(std::abs(sol.objective - dual.objective) <= 1e-7 * (1.0 + std::abs(sol.objective)));
  }
}

TEST_CASE("binary milp matches enumeration") {
  testing::Rng rng(77);
  int feasible = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = testing::uniform_int(rng, 1, 10);
    const int m = testing::uniform_int(rng, 1, 6);
    const MilpModel model = testing::random_binary_milp(rng, n, m);
    const auto expected = testing::enumerate_binary_min(model);
    const MipSolution sol = solve_milp(model);
    INFO("trial " << trial);
    if (!expected) {
      CHECK(sol.status == MipStatus::Infeasible);
      continue;
    }
    ++feasible;
    REQUIRE(sol.status == MipStatus::Optimal);
    CHECK(sol.objective == *expected);
    CHECK(model.max_violation(sol.incumbent) <= 1e-8);
    for (double v : sol.incumbent) CHECK(std::abs(v - std::round(v)) <= 1e-6);
    CHECK(std::abs(sol.objective - sol.bound) <= 1e-6 * (1.0 + std::abs(sol.objective)));
  }
  CHECK(feasible >= 20);
}

TEST_CASE("knapsack") {
  MilpModel m;
  for (double v : {4.0, 3.0, 2.0}) m.add_variable(-v, 0.0, 1.0, true);
  m.add_row(Row::from_dense(std::vector<double>{-3.0, -2.0, -2.0}, Sense::GreaterEqual, -4.0));
  const MipSolution sol = solve_milp(m);
  REQUIRE(sol.optimal());
  // 8-point enumeration: {x2, x3} packs weight 4 for value 5; no subset reaches 6.
  CHECK(-sol.objective == doctest::Approx(5.0));
  CHECK(sol.objective == *testing::enumerate_binary_min(m));
}

TEST_CASE("single binary") {
  MilpModel m;
  m.add_variable(1.0, 0.0, 1.0, true);
  const MipSolution sol = solve_milp(m);
  REQUIRE(sol.optimal());
  CHECK(sol.objective == 0.0);
}

TEST_CASE("extensive form of the two-scenario fixture") {
  const auto t1 = testing::make_t1();
  const MilpModel ext = smip::extensive_form(t1);
  CHECK(ext.num_vars() == 3);
  CHECK(ext.num_rows() == 2);
  CHECK(solve_milp(ext).objective == doctest::Approx(1.5));
  CHECK(solve_lp(relax_integrality(ext)).objective == doctest::Approx(1.5));
}

TEST_CASE("node limit keeps bound and incumbent") {
  testing::Rng rng(5);
  MilpModel model = testing::random_binary_milp(rng, 10, 2);
  MipOptions opts;
  opts.node_limit = 1;
  const MipSolution sol = solve_milp(model, opts);
  CHECK((sol.status == MipStatus::NodeLimit || sol.status == MipStatus::Optimal ||
         sol.status == MipStatus::Infeasible));
  if (sol.has_incumbent()) CHECK(sol.bound <= sol.objective + 1e-9);
}

TEST_CASE("amend_model") {
  MilpModel m;
  m.add_variable(1.0, 0.0, 1.0);
  m.add_variable(0.5, 0.0, kInf);
  const LpSolution before = solve_lp(m);

  const Row cut = Row::from_dense(std::vector<double>{1.0, 1.0}, Sense::GreaterEqual, 2.0, "theta_cut");
  const MilpModel amended = amend_model(m, std::span<const Row>(&cut, 1));
  CHECK(amended.num_rows() == m.num_rows() + 1);
  CHECK(solve_lp(amended).objective >= before.objective - 1e-9);

  CHECK(amend_model(m, {}) == m);

  const Row bad = Row::from_dense(std::vector<double>{1.0, 1.0, 1.0}, Sense::GreaterEqual, 0.0);
  CHECK_THROWS_AS(amend_model(m, std::span<const Row>(&bad, 1)), DimensionError);
}

TEST_CASE("adding rows never lowers the optimum") {
  testing::Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const MilpModel model = testing::random_lp(rng, 6, 4);
    const MilpModel extra = testing::random_lp(rng, 6, 3);
    const MilpModel amended = amend_model(model, extra.rows());
    const LpSolution a = solve_lp(model);
    const LpSolution b = solve_lp(amended);
    REQUIRE(a.optimal());
    if (b.optimal()) CHECK(b.objective >= a.objective - 1e-9);
  }
}

TEST_CASE("lp format export") {
  MilpModel m;
  m.add_variable(1.0, 0.0, 1.0, true, "x");
  m.add_variable(0.5, 0.0, kInf, false, "theta");
  m.add_row(Row::from_dense(std::vector<double>{1.0, 1.0}, Sense::GreaterEqual, 2.0, "cut"));
  const std::string text = to_lp_format(m);
  CHECK(text.find("Minimize") != std::string::npos);
  CHECK(text.find("Subject To") != std::string::npos);
  CHECK(text.find("cut:") != std::string::npos);
  CHECK(text.find("General") != std::string::npos);
  CHECK(text.find("End") != std::string::npos);
}

TEST_CASE("counting backend counts top-level calls") {
  CountingBackend counter(bundled_backend());
  MilpModel m;
  m.add_variable(1.0, 0.0, 1.0, true);
  counter.solve_lp(m);
  counter.solve_milp(m, {});
  CHECK(counter.calls() == 2);
}

}  // TEST_SUITE
