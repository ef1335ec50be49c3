#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lagcut/benders/cut.hpp"
#include "lagcut/context.hpp"
#include "lagcut/lagrangian/separation.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::averaged {

/// Componentwise mean of the cut coefficients. Throws Error on an empty list
/// or when some cut has pi0 != 1.
std::vector<double> average_pi(std::span<const benders::Cut> cuts);

/// Cut (pi_bar, 1) for scenario s with rhs Qbar_s(pi_bar, 1), valid by construction.
benders::Cut make_averaged_cut(const smip::SmipInstance& inst, int s, std::span<const double> pi_bar,
                               const Context& ctx = {}, lagrangian::SampledEpigraph* sample = nullptr,
                               int iteration = 0);

struct StrengthRecord {
  int scenario = 0;
  std::vector<double> x;
  double theta = 0.0;
  double avg_violation = 0.0;    // averaged cut at (x, theta)
  double exact_violation = 0.0;  // separated cut at (x, theta)
  double strength = 0.0;         // V = Q(x, s) - q_s(x, pi_bar)
};

/// Compares the averaged cut (pi_bar, 1) with the most violated cut of the
/// domain at (x_hat, theta_hat). The separation probe sits below the averaged
/// cut so that the search never stops at a nonpositive bracket.
StrengthRecord strength_record(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                               double theta_hat, const benders::Cut& averaged_cut,
                               const lagrangian::SeparationDomain& domain, double delta, const Context& ctx = {},
                               lagrangian::SampledEpigraph* sample = nullptr);

/// V(x_hat, pi) = Q(x_hat, s) - q_s(x_hat, pi), q_s(x, pi) = Qbar_s(pi, 1) - pi^T x.
double cut_strength(const smip::SmipInstance& inst, int s, std::span<const double> x_hat,
                    std::span<const double> pi, const lagrangian::SeparationDomain& domain, double delta,
                    const Context& ctx = {});

struct QualityStats {
  double pct_positive = 0.0;  // percent of records with avg_violation > 0
  double avg_ratio = 0.0;     // percent, mean of clipped avg/exact ratios
  long n_records = 0;
  long n_skipped = 0;         // records with exact_violation <= 1e-9
};

QualityStats quality_stats(std::span<const StrengthRecord> records, double delta);

struct DualStats {
  std::vector<double> mean;
  double variance = 0.0;  // (1/|S|) sum ||pi_s - mean||^2
};

DualStats dual_stats(std::span<const std::vector<double>> pis);

struct StatsRow {
  std::string family;
  double beta = 1.0;
  QualityStats stats;
};

/// Columns: family, beta, pct_positive, avg_ratio, n_records, n_skipped.
void write_stats_csv(std::span<const StatsRow> rows, std::ostream& out);

}  // namespace lagcut::averaged
