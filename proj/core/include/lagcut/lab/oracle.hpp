#pragma once

#include <optional>

#include "lagcut/context.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::lab {

struct OracleBounds {
  double mip_opt = 0.0;
  double lp_relax = 0.0;
  std::optional<double> enum_opt;  // binary first stage with n1 <= 12 only
};

inline constexpr int kOracleMaxVariables = 1500;
inline constexpr int kOracleMaxEnumerated = 12;

/// Extensive MILP and LP values plus exhaustive first-stage enumeration.
/// Throws Error when the extensive form exceeds kOracleMaxVariables.
OracleBounds brute_force_bounds(const smip::SmipInstance& inst, const Context& ctx = {});

}  // namespace lagcut::lab
