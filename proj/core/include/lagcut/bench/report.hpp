#pragma once

#include <map>
#include <string>
#include <vector>

#include "lagcut/bench/experiment.hpp"
#include "lagcut/bench/profile.hpp"

namespace lagcut::bench {

/// Summary columns in table order.
inline const std::vector<std::string> kSummaryColumns{"# solved", "Avg soln time", "Avg gap (%)", "Avg B&C time",
                                                      "Avg # nodes"};

/// Writes summary.csv/.txt, profiles/gamma_<g>/<method>.dat (+ .svg),
/// stats.csv/.txt and returns the written paths. Output is a pure function
/// of the results. Throws Error on empty results (nothing written) or an
/// unwritable directory.
std::vector<std::string> emit_report(const ExperimentResult& results, const std::string& dir);

/// Two-column "tau rho" data file.
std::string profile_data(const std::vector<ProfilePoint>& points);

/// Step-curve line chart of one gamma's profiles.
std::string profile_svg(const std::map<std::string, std::vector<ProfilePoint>>& curves, double gamma);

/// Filesystem-safe form of a run or method name.
std::string slug(const std::string& name);

}  // namespace lagcut::bench
