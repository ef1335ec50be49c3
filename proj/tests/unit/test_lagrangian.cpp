#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "lagcut/benders/benders.hpp"
#include "lagcut/error.hpp"
#include "lagcut/lagrangian/separation.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::lagrangian;

TEST_SUITE("lagrangian") {

TEST_CASE("qbar on the fixture") {
  const auto t1 = testing::make_t1();
  SampledEpigraph sample;
  const QbarResult a = evaluate_qbar(t1, 1, std::vector<double>{0.0}, 1.0, {}, &sample);
  CHECK(a.bound == doctest::Approx(1.0));
  CHECK(a.x[0] == 1.0);
  CHECK_FALSE(sample.empty());
  CHECK(evaluate_qbar(t1, 1, std::vector<double>{1.0}, 1.0).bound == doctest::Approx(2.0));
  CHECK(evaluate_qbar(t1, 0, std::vector<double>{0.0}, 0.0).bound == doctest::Approx(0.0));
}

TEST_CASE("separation on the fixture") {
  const auto t1 = testing::make_t1();
  const std::vector<double> x{0.0};
  const SeparationResult exact = separate_cut(t1, 1, x, 0.0, SeparationDomain::box(1.0), 0.0);
  CHECK(exact.violation == doctest::Approx(2.0));
  CHECK(exact.cut.pi[0] == doctest::Approx(1.0));
  CHECK(exact.cut.rhs == doctest::Approx(2.0));
  CHECK_FALSE(exact.truncated);

  const SeparationResult half = separate_cut(t1, 1, x, 0.0, SeparationDomain::box(1.0), 0.5);
  CHECK(half.violation >= 1.0 - 1e-9);

  // (x, theta) = (0, 2) lies on the epigraph of f_2
  const SeparationResult none = separate_cut(t1, 1, x, 2.0, SeparationDomain::box(1.0), 0.0);
  CHECK(none.violation <= 1e-9);
}

TEST_CASE("separation bracket is monotone") {
  testing::Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = 4;
    shape.scenarios = 2;
    shape.integer_recourse = true;
    const auto inst = testing::random_smip(rng, shape);
    std::vector<double> x(4);
    for (double& v : x) v = testing::uniform(rng, 0.0, 1.0);
    const auto r = separate_cut(inst, 0, x, 0.0, SeparationDomain::box(2.0), 0.0);
    for (std::size_t k = 1; k < r.ub_trace.size(); ++k) {
      CHECK(r.ub_trace[k] <= r.ub_trace[k - 1] + 1e-9);
      CHECK(r.lb_trace[k] >= r.lb_trace[k - 1]);
    }
  }
}

TEST_CASE("joint pi0 mode stays in the domain") {
  const auto t1 = testing::make_t1();
  const auto dom = SeparationDomain::box(1.0, false);
  const auto r = separate_cut(t1, 1, std::vector<double>{0.0}, 0.0, dom, 0.0);
  CHECK(dom.contains(r.cut.pi, r.cut.pi0));
  CHECK(r.violation >= 2.0 - 1e-8);
}

TEST_CASE("cuts are valid on enumerated points") {
  testing::Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = testing::uniform_int(rng, 2, 5);
    shape.scenarios = 2;
    shape.integer_recourse = trial % 2 == 0;
    shape.cardinality_row = trial % 3 == 0;
    const auto inst = testing::random_smip(rng, shape);
    const auto table = testing::recourse_table(inst);
    std::vector<double> x(static_cast<std::size_t>(shape.n1));
    for (double& v : x) v = testing::uniform(rng, 0.0, 1.0);
    for (int s = 0; s < 2; ++s) {
      const auto r = separate_cut(inst, s, x, testing::uniform(rng, 0.0, 5.0), SeparationDomain::box(3.0), 0.0);
      for (std::size_t k = 0; k < table.points.size(); ++k) {
        CHECK(r.cut.lhs(table.points[k], table.value[static_cast<std::size_t>(s)][k]) >= r.cut.rhs - 1e-8);
      }
    }
  }
}

TEST_CASE("qbar is concave and Lipschitz in pi") {
  testing::Rng rng(47);
  int pairs = 0;
  while (pairs < 100) {
    testing::RandomSmipShape shape;
    shape.n1 = 3;
    shape.scenarios = 1;
    shape.integer_recourse = true;
    const auto inst = testing::random_smip(rng, shape);
    const auto table = testing::recourse_table(inst);
    double lip = 0.0;
    for (const auto& p : table.points) {
      double l1 = 0.0;
      for (double v : p) l1 += std::abs(v);
      lip = std::max(lip, l1);
    }
    for (int k = 0; k < 10; ++k, ++pairs) {
      std::vector<double> a(3), b(3), mid(3);
      for (int j = 0; j < 3; ++j) {
        a[static_cast<std::size_t>(j)] = testing::uniform(rng, -1.0, 1.0);
        b[static_cast<std::size_t>(j)] = testing::uniform(rng, -1.0, 1.0);
        mid[static_cast<std::size_t>(j)] = 0.5 * (a[static_cast<std::size_t>(j)] + b[static_cast<std::size_t>(j)]);
      }
      const double qa = evaluate_qbar(inst, 0, a, 1.0).bound;
      const double qb = evaluate_qbar(inst, 0, b, 1.0).bound;
      const double qm = evaluate_qbar(inst, 0, mid, 1.0).bound;
      double dist = 0.0;
      for (std::size_t j = 0; j < 3; ++j) dist = std::max(dist, std::abs(a[j] - b[j]));
      CHECK(qm >= 0.5 * (qa + qb) - 1e-8);
      CHECK(std::abs(qa - qb) <= lip * dist + 1e-8);
    }
  }
}

TEST_CASE("restricted domain selection") {
  auto inst = testing::make_t1();
  inst.num_first = 2;
  inst.num_integer = 2;
  inst.cost = {1.0, 1.0};
  inst.upper = {1.0, 1.0};
  inst.first_stage = SparseMatrix(0, 2);
  for (auto& sc : inst.scenarios) sc.technology = SparseMatrix::from_dense({{1.0, 0.0}});
  benders::MasterState state(inst);

  CHECK_THROWS_AS(restricted_domain(state, 0, 10), Error);

  benders::Cut c;
  c.scenario = 0;
  c.pi = {1.0, 0.0};
  c.rhs = 1.0;
  state.add_cut(c);
  auto d = restricted_domain(state, 0, 10);
  REQUIRE(d.basis.size() == 1);
  CHECK(d.basis[0] == std::vector<double>{1.0, 0.0});

  c.pi = {2.0, 0.0};
  c.rhs = 3.0;
  state.add_cut(c);
  CHECK(restricted_domain(state, 0, 10).basis.size() == 1);

  testing::Rng rng(5);
  benders::MasterState many(inst);
  for (int k = 0; k < 12; ++k) {
    benders::Cut r;
    r.scenario = 1;
    r.birth_iteration = k;
    r.pi = {testing::uniform(rng, -1.0, 1.0), testing::uniform(rng, -1.0, 1.0)};
    r.rhs = k == 4 ? 0.0 : -1.0 - k;  // cut 4 is the only one binding at (0, 0)
    many.add_cut(r);
  }
  const auto span = restricted_domain(many, 1, 10);
  CHECK(span.basis.size() <= 10);
  CHECK(span.basis.size() == 2);
  const auto& first = many.pool(1)[4].pi;
  const double norm = std::hypot(first[0], first[1]);
  CHECK(span.basis[0][0] == doctest::Approx(first[0] / norm));
  CHECK(span.basis[0][1] == doctest::Approx(first[1] / norm));
  span.check(2);
}

TEST_CASE("restricted separation stays in the span") {
  testing::Rng rng(53);
  testing::RandomSmipShape shape;
  shape.n1 = 4;
  shape.scenarios = 3;
  const auto inst = testing::random_smip(rng, shape);
  const auto state = benders::benders_root_loop(inst);
  for (int s = 0; s < 3; ++s) {
    if (state.pool(s).empty()) continue;
    const auto dom = restricted_domain(state, s, 2);
    const auto r = separate_cut(inst, s, state.x, state.theta[static_cast<std::size_t>(s)], dom, 0.5);
    CHECK(dom.contains(r.cut.pi, r.cut.pi0, 1e-7));
  }
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(SeparationDomain::box(0.0).check(2), ModelError);
  SeparationDomain bad;
  bad.mode = DomainMode::RestrictedSpan;
  bad.basis = {{1.0, 1.0}};
  CHECK_THROWS_AS(bad.check(2), ModelError);
}

}  // TEST_SUITE
