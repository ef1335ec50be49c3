#include <doctest.h>

#include <cmath>

#include "lagcut/error.hpp"
#include "lagcut/milp/branch_and_bound.hpp"
#include "lagcut/milp/simplex.hpp"
#include "lagcut/smip/instance.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::smip;

TEST_SUITE("smip") {

TEST_CASE("validation") {
  SmipInstance t1 = testing::make_t1();
  CHECK(validate_instance(t1).ok());

  SmipInstance bad = t1;
  bad.scenarios[0].probability = 0.6;
  bad.scenarios[1].probability = 0.6;
  const auto rep = validate_instance(bad);
  REQUIRE_FALSE(rep.ok());
  CHECK(rep.summary().find("probabilities sum to 1.2") != std::string::npos);

  SmipInstance two = t1;
  two.num_first = 2;
  two.num_integer = 2;
  two.cost = {1.0, 1.0};
  two.upper = {1.0, 1.0};
  two.first_stage = SparseMatrix(0, 2);
  two.scenarios[0].technology = SparseMatrix(1, 3);
  two.scenarios[1].technology = SparseMatrix(1, 2);
  CHECK(validate_instance(two).summary().find("T^1 has 3 cols, expected n1=2") != std::string::npos);

  SmipInstance negative = t1;
  negative.scenarios[0].probability = -0.5;
  negative.scenarios[1].probability = 1.5;
  CHECK(validate_instance(negative).issues.size() >= 2);
  CHECK_THROWS_AS(extensive_form(negative), ModelError);
}

TEST_CASE("second stage values on the fixture") {
  const SmipInstance t1 = testing::make_t1();
  const std::vector<double> zero{0.0}, one{1.0};
  CHECK(second_stage_value(t1, 1, zero) == doctest::Approx(2.0));
  CHECK(second_stage_value(t1, 0, one) == doctest::Approx(0.0));
  CHECK(second_stage_value(t1, 1, one) == doctest::Approx(1.0));
  CHECK_THROWS_AS(second_stage_value(t1, 2, one), std::out_of_range);
}

TEST_CASE("extensive form with relaxed first stage") {
  SmipInstance t1 = testing::make_t1();
  t1.num_integer = 0;
  CHECK(milp::solve_milp(extensive_form(t1)).objective == doctest::Approx(1.5));
}

TEST_CASE("infeasible second stage") {
  SmipInstance inst = testing::make_t1();
  inst.scenarios.resize(1);
  inst.scenarios[0].probability = 1.0;
  inst.scenarios[0].recourse = SparseMatrix(1, 1);  // 0 * y >= 1 - x
  inst.scenarios[0].rhs = {5.0};
  CHECK(milp::solve_milp(extensive_form(inst)).status == milp::MipStatus::Infeasible);
  CHECK(second_stage_value(inst, 0, std::vector<double>{0.0}) == kInfeasibleValue);
}

TEST_CASE("recourse value is convex on the relaxation") {
  testing::Rng rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = 3;
    shape.scenarios = 2;
    const SmipInstance inst = testing::random_smip(rng, shape);
    std::vector<double> a(3), b(3), mid(3);
    for (int j = 0; j < 3; ++j) {
      a[static_cast<std::size_t>(j)] = testing::uniform(rng, 0.0, 1.0);
      b[static_cast<std::size_t>(j)] = testing::uniform(rng, 0.0, 1.0);
    }
    const double alpha = testing::uniform(rng, 0.0, 1.0);
    for (std::size_t j = 0; j < 3; ++j) mid[j] = alpha * a[j] + (1.0 - alpha) * b[j];
    for (int s = 0; s < 2; ++s) {
      const double lhs = second_stage_value(inst, s, mid);
      const double rhs = alpha * second_stage_value(inst, s, a) + (1.0 - alpha) * second_stage_value(inst, s, b);
      CHECK(lhs <= rhs + 1e-8);
    }
  }
}

TEST_CASE("extensive optimum equals enumeration") {
  testing::Rng rng(11);
  for (int trial = 0; trial < 12; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = testing::uniform_int(rng, 1, 6);
    shape.scenarios = testing::uniform_int(rng, 1, 3);
    shape.integer_recourse = trial % 2 == 1;
    shape.cardinality_row = trial % 3 == 0;
    const SmipInstance inst = testing::random_smip(rng, shape);
    const auto table = testing::recourse_table(inst);
    const milp::MipSolution ext = milp::solve_milp(extensive_form(inst));
    REQUIRE(ext.optimal());
    CHECK(ext.objective == doctest::Approx(testing::enum_optimum(inst, table)).epsilon(1e-9));
  }
}

}  // TEST_SUITE
