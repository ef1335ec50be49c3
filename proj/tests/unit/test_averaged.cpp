#include <doctest.h>

#include <cmath>
#include <sstream>

#include "lagcut/averaged/averaged.hpp"
#include "lagcut/batch/run.hpp"
#include "lagcut/error.hpp"
#include "support/oracles.hpp"

using namespace lagcut;
using namespace lagcut::averaged;

namespace {

benders::Cut with_pi(std::vector<double> pi, double pi0 = 1.0) {
  benders::Cut c;
  c.pi = std::move(pi);
  c.pi0 = pi0;
  return c;
}

}  // namespace

TEST_SUITE("averaged") {

TEST_CASE("coefficient averages") {
  std::vector<benders::Cut> cuts{with_pi({1.0, 0.0}), with_pi({0.0, 1.0})};
  CHECK(average_pi(cuts) == std::vector<double>{0.5, 0.5});
  CHECK(average_pi(std::span(cuts).first(1)) == std::vector<double>{1.0, 0.0});
  std::vector<benders::Cut> sym{with_pi({2.0, -1.0}), with_pi({-2.0, 1.0})};
  CHECK(average_pi(sym) == std::vector<double>{0.0, 0.0});
  CHECK_THROWS_AS(average_pi({}), Error);
  std::vector<benders::Cut> mixed{with_pi({1.0}), with_pi({1.0}, 0.5)};
  CHECK_THROWS_AS(average_pi(mixed), Error);
}

TEST_CASE("averaged cuts on the fixture") {
  const auto t1 = testing::make_t1();
  const auto a = make_averaged_cut(t1, 0, std::vector<double>{1.0});
  CHECK(a.kind == benders::CutKind::Averaged);
  CHECK(a.rhs == doctest::Approx(1.0));
  const auto b = make_averaged_cut(t1, 1, std::vector<double>{0.0});
  CHECK(b.rhs == doctest::Approx(1.0));
}

TEST_CASE("cut strength") {
  const auto t1 = testing::make_t1();
  const auto box = lagrangian::SeparationDomain::box(1.0);
  const std::vector<double> x{0.0};
  CHECK(cut_strength(t1, 1, x, std::vector<double>{0.0}, box, 0.0) == doctest::Approx(1.0));
  CHECK(cut_strength(t1, 1, x, std::vector<double>{1.0}, box, 0.0) == doctest::Approx(0.0).epsilon(1e-9));

  testing::Rng rng(83);
  for (int trial = 0; trial < 10; ++trial) {
    testing::RandomSmipShape shape;
    shape.n1 = 3;
    shape.scenarios = 2;
    shape.integer_recourse = true;
    const auto inst = testing::random_smip(rng, shape);
    std::vector<double> xh(3), pi(3);
    for (double& v : xh) v = testing::uniform(rng, 0.0, 1.0);
    for (double& v : pi) v = testing::uniform(rng, -1.0, 1.0);
    CHECK(cut_strength(inst, 0, xh, pi, box, 0.0) >= -1e-8);
    const auto sep = lagrangian::separate_cut(inst, 0, xh, -100.0, box, 0.0);
    const double v = cut_strength(inst, 0, xh, sep.cut.pi, box, 0.0);
    CAPTURE(v);
    CHECK(std::abs(v) <= 1e-8);
  }
}

TEST_CASE("quality statistics") {
  std::vector<StrengthRecord> recs(2);
  recs[0].avg_violation = 1.0;
  recs[0].exact_violation = 2.0;
  recs[1].avg_violation = 0.0;
  recs[1].exact_violation = 1.0;
  const QualityStats st = quality_stats(recs, 0.0);
  CHECK(st.pct_positive == doctest::Approx(50.0));
  CHECK(st.avg_ratio == doctest::Approx(25.0));
  CHECK(st.n_skipped == 0);

  std::vector<StrengthRecord> same(3);
  same[0].avg_violation = same[0].exact_violation = 2.0;
  same[1].avg_violation = same[1].exact_violation = 0.5;
  same[2].avg_violation = same[2].exact_violation = -1.0;
  const QualityStats id = quality_stats(same, 0.0);
  CHECK(id.pct_positive == doctest::Approx(200.0 / 3.0));
  CHECK(id.avg_ratio == doctest::Approx(100.0));
  CHECK(id.n_skipped == 1);

  std::ostringstream out;
  std::vector<StatsRow> rows{{"sslp", 0.2, st}};
  write_stats_csv(rows, out);
  CHECK(out.str().rfind("family,beta,pct_positive,avg_ratio,n_records,n_skipped\n", 0) == 0);
}

TEST_CASE("dual statistics") {
  std::vector<std::vector<double>> pis{{1.0, 0.0}, {0.0, 1.0}};
  const DualStats st = dual_stats(pis);
  CHECK(st.mean == std::vector<double>{0.5, 0.5});
  CHECK(st.variance == doctest::Approx(0.5));
}

TEST_CASE("run collects strength records") {
  testing::Rng rng(89);
  testing::RandomSmipShape shape;
  shape.n1 = 4;
  shape.scenarios = 6;
  shape.integer_recourse = true;
  const auto inst = testing::random_smip(rng, shape);
  const auto table = testing::recourse_table(inst);
  batch::RunConfig cfg;
  cfg.beta = 1.0 / 6.0;
  cfg.radius = 3.0;
  cfg.averaged_cuts = true;
  cfg.collect_stats = true;
  const auto r = batch::run(inst, cfg);
  for (const auto& rec : r.strength_records) {
    CHECK(rec.strength >= -1e-8);
    CHECK(rec.avg_violation <= rec.exact_violation + 1e-8);
  }
  const auto st = quality_stats(r.strength_records, cfg.stats_delta);
  CHECK(st.pct_positive >= 0.0);
  CHECK(st.pct_positive <= 100.0);
  CHECK(st.avg_ratio <= 100.0 * (1.0 + cfg.stats_delta));
  for (const auto& pool : r.state.pools()) {
    for (const auto& c : pool) {
      for (std::size_t k = 0; k < table.points.size(); ++k) {
        CHECK(c.lhs(table.points[k], table.value[static_cast<std::size_t>(c.scenario)][k]) >= c.rhs - 1e-8);
      }
    }
  }
}

}  // TEST_SUITE
