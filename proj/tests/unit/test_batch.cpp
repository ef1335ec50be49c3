#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "lagcut/batch/run.hpp"
#include "lagcut/error.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::batch;

namespace {

void check_partition(const BatchSchedule& sched, int m) {
  std::vector<int> all;
  for (const auto& b : sched.batches) all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<int> expect(static_cast<std::size_t>(m));
  std::iota(expect.begin(), expect.end(), 0);
  CHECK(all == expect);
  for (std::size_t i = 0; i + 1 < sched.batches.size(); ++i) CHECK(static_cast<int>(sched.batches[i].size()) == sched.batch_size);
}

}  // namespace

TEST_SUITE("batch") {

TEST_CASE("batch arithmetic") {
  auto a = make_batches(10, 0.2, 3);
  CHECK(a.batch_size == 2);
  CHECK(a.num_batches() == 5);
  check_partition(a, 10);

  auto b = make_batches(10, 1.0, 3);
  CHECK(b.num_batches() == 1);
  CHECK(b.batches[0].size() == 10);

  auto c = make_batches(7, 0.5, 3);
  CHECK(c.batch_size == 3);
  REQUIRE(c.num_batches() == 3);
  CHECK(c.batches[2].size() == 1);
  check_partition(c, 7);

  CHECK(make_batches(3, 0.1, 1).batch_size == 1);
  CHECK_THROWS_AS(make_batches(0, 0.5, 1), Error);
  CHECK_THROWS_AS(make_batches(4, 0.0, 1), Error);
  CHECK(make_batches(9, 0.3, 42).batches == make_batches(9, 0.3, 42).batches);
}

TEST_CASE("permutations") {
  auto rr = make_batches(4, 0.25, 1);
  CHECK(next_order(rr, 1) == std::vector<int>{2, 3, 0, 1});
  CHECK(next_order(rr, -1) == std::vector<int>{0, 1, 2, 3});
  CHECK(next_order(rr, 3) == std::vector<int>{0, 1, 2, 3});

  auto id = make_batches(4, 0.25, 1, PermutationPolicy::Identity);
  CHECK(next_order(id, 2) == std::vector<int>{0, 1, 2, 3});

  auto sh = make_batches(8, 0.125, 9, PermutationPolicy::RandomShuffle);
  for (int k = 0; k < 5; ++k) {
    auto o = next_order(sh, 0);
    std::sort(o.begin(), o.end());
    CHECK(o == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7});
  }
}

TEST_CASE("stopping criterion is strict") {
  CHECK_FALSE(stopping_triggered(0.05, 0.1));
  CHECK(stopping_triggered(0.2, 0.1));
  CHECK_FALSE(stopping_triggered(0.1, 0.1));
}

TEST_CASE("method names") {
  RunConfig cfg;
  CHECK(cfg.method_name() == "Exact-Tra");
  apply_method_name(cfg, "RstrMIP-Lbb(0.05)");
  CHECK(cfg.paradigm == Paradigm::RstrMIP);
  CHECK(cfg.beta == 0.05);
  CHECK(cfg.method_name() == "RstrMIP-Lbb(0.05)");
  apply_method_name(cfg, "Exact-Lbb(0.25)");
  CHECK(cfg.method_name() == "Exact-Lbb(0.25)");
  CHECK_THROWS_AS(apply_method_name(cfg, "Exact-Lbb(2)"), Error);
  CHECK_THROWS_AS(apply_method_name(cfg, "Fast"), Error);
  cfg.delta = 1.0;
  CHECK_THROWS_AS(cfg.check(), Error);
}

TEST_CASE("fixture run") {
  const auto t1 = testing::make_t1();
  RunConfig cfg;
  cfg.beta = 0.5;
  const RunResult r = run(t1, cfg);
  CHECK(r.trajectory.status == RunStatus::EpsOptimal);
  CHECK(r.trajectory.final_lb() == doctest::Approx(1.5));
  const auto cert = eps_optimality_certificate(t1, r.state, cfg.epsilon, lagrangian::SeparationDomain::box(1.0), 0.0);
  CHECK(cert.ok);
}

TEST_CASE("huge epsilon never triggers") {
  testing::Rng rng(61);
  testing::RandomSmipShape shape;
  shape.n1 = 4;
  shape.scenarios = 4;
  shape.integer_recourse = true;
  const auto inst = testing::random_smip(rng, shape);
  RunConfig cfg;
  cfg.epsilon = 1e9;
  cfg.beta = 0.25;
  const RunResult r = run(inst, cfg);
  CHECK(r.trajectory.status == RunStatus::EpsOptimal);
  CHECK(r.master_resolves == 0);
  CHECK(r.sweeps == 1);
  CHECK(r.separations == 4);
}

TEST_CASE("batched and unbatched runs agree") {
  testing::Rng rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = 4;
    shape.scenarios = 4;
    shape.integer_recourse = true;
    const auto inst = testing::random_smip(rng, shape);
    RunConfig cfg;
    cfg.radius = 5.0;
    cfg.time_limit = 1e9;
    const double tra = run(inst, cfg).trajectory.final_lb();
    cfg.beta = 0.25;
    const RunResult lbb = run(inst, cfg);
    CHECK(lbb.trajectory.status == RunStatus::EpsOptimal);
    CHECK(std::abs(tra - lbb.trajectory.final_lb()) <= (2 * cfg.epsilon + 1e-6) * (1 + std::abs(tra)));
  }
}

TEST_CASE("trajectory invariants and csv round trip") {
  testing::Rng rng(71);
  testing::RandomSmipShape shape;
  shape.n1 = 5;
  shape.scenarios = 5;
  shape.integer_recourse = true;
  const auto inst = testing::random_smip(rng, shape);
  RunConfig cfg;
  cfg.beta = 0.2;
  cfg.radius = 3.0;
  cfg.paradigm = Paradigm::RstrMIP;
  cfg.delta = 0.5;
  const RunResult r = run(inst, cfg);
  const auto& rec = r.trajectory.records;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    CHECK(rec[k].lb >= rec[k - 1].lb);
    CHECK(rec[k].time >= rec[k - 1].time);
    CHECK(rec[k].cuts_benders + rec[k].cuts_lagrangian + rec[k].cuts_averaged >=
          rec[k - 1].cuts_benders + rec[k - 1].cuts_lagrangian + rec[k - 1].cuts_averaged);
  }
  std::stringstream ss;
  write_trajectory_csv(r.trajectory, ss);
  const Trajectory back = read_trajectory_csv(ss);
  CHECK(back.status == r.trajectory.status);
  REQUIRE(back.records.size() == rec.size());
  CHECK(back.records.back().lb == rec.back().lb);
}

TEST_CASE("certificate converse") {
  testing::Rng rng(73);
  testing::RandomSmipShape shape;
  shape.n1 = 3;
  shape.scenarios = 3;
  shape.integer_recourse = true;
  const auto inst = testing::random_smip(rng, shape);
  RunConfig cfg;
  cfg.radius = 2.0;
  const RunResult r = run(inst, cfg);
  REQUIRE(r.trajectory.status == RunStatus::EpsOptimal);
  const auto cert = eps_optimality_certificate(inst, r.state, cfg.epsilon, lagrangian::SeparationDomain::box(2.0), 0.0);
  REQUIRE(cert.ok);
  cfg.beta = 1.0 / 3.0;
  const RunResult again = run_from(inst, cfg, r.state);
  CHECK(again.master_resolves == 0);
  CHECK(again.last_sweep_violation <= cfg.epsilon);
}

TEST_CASE("time limit") {
  testing::Rng rng(79);
  testing::RandomSmipShape shape;
  shape.n1 = 5;
  shape.scenarios = 4;
  shape.integer_recourse = true;
  const auto inst = testing::random_smip(rng, shape);
  milp::CountingBackend counter(milp::bundled_backend());
  CallClock clock(counter);
  Context ctx{&counter, &clock};
  RunConfig cfg;
  cfg.radius = 5.0;
  cfg.time_limit = 3;
  const RunResult r = run(inst, cfg, ctx);
  CHECK(r.trajectory.status == RunStatus::TimeLimit);
}

}  // TEST_SUITE
