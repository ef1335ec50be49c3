#pragma once

#include <vector>

#include "lagcut/benders/master.hpp"

namespace lagcut::lagrangian {

enum class DomainMode { ExactBox, RestrictedSpan };

/// Compact set of cut coefficients searched by the separation problem.
///   ExactBox:       |pi_j| <= radius
///   RestrictedSpan: pi = V mu, |mu_k| <= radius, V with orthonormal columns
/// pi0 is fixed to 1 unless `pi0_fixed` is false, in which case pi0 in [0, 1].
struct SeparationDomain {
  DomainMode mode = DomainMode::ExactBox;
  double radius = 1.0;
  bool pi0_fixed = true;
  std::vector<std::vector<double>> basis;

  static SeparationDomain box(double radius = 1.0, bool pi0_fixed = true);

  /// Orthonormalizes `vectors` in order (modified Gram-Schmidt) and drops
  /// those whose residual falls below rank_tol times their norm.
  static SeparationDomain span(const std::vector<std::vector<double>>& vectors, double radius = 1.0,
                               std::size_t max_vectors = static_cast<std::size_t>(-1), double rank_tol = 1e-10);

  /// Throws ModelError when the domain is not a valid compact set for n1.
  void check(int n1) const;

  bool contains(const std::vector<double>& pi, double pi0, double tol = 1e-9) const;
};

/// Span of Benders-cut coefficients from scenario s: cuts binding at the
/// state's point first, then by slack; ties go to the most recent cut. Keeps
/// at most K independent vectors. Throws Error when the pool has no Benders cut.
SeparationDomain restricted_domain(const benders::MasterState& state, int s, int K, double radius = 1.0);

}  // namespace lagcut::lagrangian
