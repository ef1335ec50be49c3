#pragma once

namespace lagcut {

/// Numerical tolerances shared by every solver and algorithm in the library.
struct Tolerances {
  double feasibility = 1e-8;   // primal row/bound violation accepted as feasible
  double optimality = 1e-9;    // reduced-cost threshold for simplex pricing
  double pivot = 1e-9;         // smallest |alpha| accepted in a ratio test
  double integrality = 1e-6;   // distance to nearest integer treated as integral
  double mip_gap = 1e-6;       // default relative MIP gap
  double exact_mip_gap = 1e-10;  // gap used where a MILP value feeds a cut rhs
  double cut = 1e-6;           // minimum violation for a cut to be pooled
  double dedup = 1e-9;         // coefficient equality threshold for pool dedup
  double rank = 1e-10;         // residual norm below which a basis vector is dependent
};

/// Process-wide defaults. Functions take a `const Tolerances&` where callers
/// may want to override them.
inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace lagcut
