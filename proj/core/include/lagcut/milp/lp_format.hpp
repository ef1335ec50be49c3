#pragma once

#include <iosfwd>
#include <string>

#include "lagcut/milp/model.hpp"

namespace lagcut::milp {

/// Writes the model in CPLEX LP file syntax (Minimize / Subject To / Bounds /
/// General / End) for inspection with external tools.
void write_lp_format(const MilpModel& model, std::ostream& out);
std::string to_lp_format(const MilpModel& model);

}  // namespace lagcut::milp
