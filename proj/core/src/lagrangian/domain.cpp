#include "lagcut/lagrangian/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::lagrangian {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
  return v;
}

}  // namespace

SeparationDomain SeparationDomain::box(double radius, bool pi0_fixed) {
  SeparationDomain d;
  d.mode = DomainMode::ExactBox;
  d.radius = radius;
  d.pi0_fixed = pi0_fixed;
  return d;
}

SeparationDomain SeparationDomain::span(const std::vector<std::vector<double>>& vectors, double radius,
                                        std::size_t max_vectors, double rank_tol) {
  SeparationDomain d;
  d.mode = DomainMode::RestrictedSpan;
  d.radius = radius;
  for (const auto& v : vectors) {
    if (d.basis.size() >= max_vectors) break;
    const double norm = std::sqrt(dot(v, v));
    if (norm == 0.0) continue;
    std::vector<double> r = v;
    // two passes keep the basis orthogonal to working precision
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : d.basis) {
        const double c = dot(r, q);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c * q[i];
      }
    }
    const double rn = std::sqrt(dot(r, r));
    if (rn <= rank_tol * norm) continue;
    for (double& e : r) e /= rn;
    d.basis.push_back(std::move(r));
  }
  return d;
}

void SeparationDomain::check(int n1) const {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ModelError(fmt::format("domain radius {} must be positive", radius));
  if (mode == DomainMode::ExactBox) return;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (static_cast<int>(basis[k].size()) != n1) {
      throw ModelError(fmt::format("basis vector {} has length {}, expected n1={}", k + 1, basis[k].size(), n1));
    }
    for (std::size_t l = 0; l <= k; ++l) {
      const double expect = k == l ? 1.0 : 0.0;
      if (std::abs(dot(basis[k], basis[l]) - expect) > 1e-8) throw ModelError("span basis is not orthonormal");
    }
  }
}

bool SeparationDomain::contains(const std::vector<double>& pi, double pi0, double tol) const {
  if (pi0_fixed ? std::abs(pi0 - 1.0) > tol : (pi0 < -tol || pi0 > 1.0 + tol)) return false;
  if (mode == DomainMode::ExactBox) {
    return std::all_of(pi.begin(), pi.end(), [&](double v) { return std::abs(v) <= radius + tol; });
  }
  std::vector<double> residual = pi;
  for (const auto& q : basis) {
    const double mu = dot(pi, q);
    if (std::abs(mu) > radius + tol) return false;
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] -= mu * q[i];
  }
  return std::sqrt(dot(residual, residual)) <= tol * std::max(1.0, std::sqrt(dot(pi, pi)));
}

SeparationDomain restricted_domain(const benders::MasterState& state, int s, int K, double radius) {
  const auto& pool = state.pool(s);
  struct Candidate {
    bool binding;
    double slack;
    int birth;
    std::size_t index;
  };
  std::vector<Candidate> cands;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const benders::Cut& cut = pool[i];
    if (cut.kind != benders::CutKind::Benders) continue;
    const double slack = -benders::cut_violation(cut, state.x, state.theta[static_cast<std::size_t>(s)]);
    cands.push_back({slack <= 1e-9, slack, cut.birth_iteration, i});
  }
  if (cands.empty()) {
    throw Error(fmt::format("scenario {} has no Benders cut to span; run the Benders phase first", s + 1));
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.binding != b.binding) return a.binding;
    if (!a.binding && a.slack != b.slack) return a.slack < b.slack;
    if (a.birth != b.birth) return a.birth > b.birth;
    return a.index > b.index;
  });
  std::vector<std::vector<double>> vectors;
  for (const Candidate& c : cands) vectors.push_back(pool[c.index].pi);
  return SeparationDomain::span(vectors, radius, static_cast<std::size_t>(std::max(K, 0)));
}

}  // namespace lagcut::lagrangian
