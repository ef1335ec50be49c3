#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "lagcut/batch/run.hpp"

namespace lagcut::bench {

struct ProfileInput {
  std::string instance;
  std::string method;
  batch::Trajectory trajectory;
};

struct ProfilePoint {
  double tau = 0.0;
  double rho = 0.0;
  friend bool operator==(const ProfilePoint&, const ProfilePoint&) = default;
};

inline constexpr double kNever = std::numeric_limits<double>::infinity();

/// t^gamma_{p,m} for every (instance, method): the earliest trajectory time
/// whose improvement over the instance baseline (lb at time 0) reaches
/// gamma * g_p, where g_p is the best final improvement over all methods.
std::map<std::string, std::map<std::string, double>> closing_times(const std::vector<ProfileInput>& runs,
                                                                   double gamma);

/// rho^gamma_m sampled at time 0 and every finite closing time of any method.
/// Throws Error on an empty run set or gamma outside [0, 1].
std::map<std::string, std::vector<ProfilePoint>> gap_closed_profile(const std::vector<ProfileInput>& runs,
                                                                    double gamma);

}  // namespace lagcut::bench
