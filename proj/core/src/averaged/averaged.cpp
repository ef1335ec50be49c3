#include "lagcut/averaged/averaged.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "lagcut/error.hpp"

namespace lagcut::averaged {

std::vector<double> average_pi(std::span<const benders::Cut> cuts) {
  if (cuts.empty()) throw Error("cannot average an empty cut list");
  std::vector<double> mean(cuts.front().pi.size(), 0.0);
  for (const benders::Cut& c : cuts) {
    if (c.pi0 != 1.0) throw Error(fmt::format("cut for scenario {} has pi0 = {}, expected 1", c.scenario + 1, c.pi0));
    if (c.pi.size() != mean.size()) throw DimensionError("cuts have different coefficient lengths");
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += c.pi[j];
  }
  for (double& v : mean) v /= static_cast<double>(cuts.size());
  return mean;
}

benders::Cut make_averaged_cut(const smip::SmipInstance& inst, int s, std::span<const double> pi_bar,
                               const Context& ctx, lagrangian::SampledEpigraph* sample, int iteration) {
  const lagrangian::QbarResult q = lagrangian::evaluate_qbar(inst, s, pi_bar, 1.0, ctx, sample);
  benders::Cut cut;
  cut.scenario = s;
  cut.kind = benders::CutKind::Averaged;
  cut.pi.assign(pi_bar.begin(), pi_bar.end());
  cut.pi0 = 1.0;
  cut.rhs = q.bound;
  cut.birth_iteration = iteration;
  return cut;
}

StrengthRecord strength_record(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                               double theta_hat, const benders::Cut& averaged_cut,
                               const lagrangian::SeparationDomain& domain, double delta, const Context& ctx,
                               lagrangian::SampledEpigraph* sample) {
  StrengthRecord rec;
  rec.scenario = s;
  rec.x.assign(x_hat.begin(), x_hat.end());
  rec.theta = theta_hat;
  rec.avg_violation = benders::cut_violation(averaged_cut, x_hat, theta_hat);

  const double q_avg = rec.avg_violation + theta_hat;
  const double probe = std::min(theta_hat, q_avg - 1.0);
  lagrangian::SampledEpigraph local;
  const lagrangian::SeparationResult sep =
      lagrangian::separate_cut(inst, s, x_hat, probe, domain, delta, sample != nullptr ? *sample : local, ctx);
  const double q_best = sep.violation + probe;
  // the averaged cut is valid even outside a restricted domain
  const double q_max = std::max(q_best, q_avg);
  rec.exact_violation = q_max - theta_hat;
  rec.strength = q_max - q_avg;
  return rec;
}

double cut_strength(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                    std::span<const double> pi, const lagrangian::SeparationDomain& domain, double delta,
                    const Context& ctx) {
  const benders::Cut cut = make_averaged_cut(inst, s, pi, ctx);
  return strength_record(inst, s, x_hat, 0.0, cut, domain, delta, ctx).strength;
}

QualityStats quality_stats(std::span<const StrengthRecord> records, double delta) {
  QualityStats st;
  st.n_records = static_cast<long>(records.size());
  if (records.empty()) return st;
  long positive = 0;
  long ratios = 0;
  double ratio_sum = 0.0;
  for (const StrengthRecord& r : records) {
    if (r.avg_violation > 0.0) ++positive;
    if (r.exact_violation > 1e-9) {
      ratio_sum += std::clamp(r.avg_violation / r.exact_violation, 0.0, 1.0 + delta);
      ++ratios;
    } else {
      ++st.n_skipped;
    }
  }
  st.pct_positive = 100.0 * static_cast<double>(positive) / static_cast<double>(records.size());
  st.avg_ratio = ratios > 0 ? 100.0 * ratio_sum / static_cast<double>(ratios) : 0.0;
  return st;
}

DualStats dual_stats(std::span<const std::vector<double>> pis) {
  DualStats st;
  if (pis.empty()) return st;
  st.mean.assign(pis.front().size(), 0.0);
  for (const auto& p : pis) {
    for (std::size_t j = 0; j < st.mean.size(); ++j) st.mean[j] += p[j];
  }
  for (double& v : st.mean) v /= static_cast<double>(pis.size());
  for (const auto& p : pis) {
    for (std::size_t j = 0; j < st.mean.size(); ++j) st.variance += (p[j] - st.mean[j]) * (p[j] - st.mean[j]);
  }
  st.variance /= static_cast<double>(pis.size());
  return st;
}

void write_stats_csv(std::span<const StatsRow> rows, std::ostream& out) {
  out << "family,beta,pct_positive,avg_ratio,n_records,n_skipped\n";
  for (const StatsRow& r : rows) {
    fmt::print(out, "{},{:g},{:.4f},{:.4f},{},{}\n", r.family, r.beta, r.stats.pct_positive, r.stats.avg_ratio,
               r.stats.n_records, r.stats.n_skipped);
  }
}

}  // namespace lagcut::averaged
