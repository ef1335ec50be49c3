#include "lagcut/bench/profile.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::bench {

namespace {

double baseline_of(const batch::Trajectory& t) {
  for (const auto& r : t.records) {
    if (r.time <= 0.0) return r.lb;
  }
  return t.records.front().lb;
}

}  // namespace

std::map<std::string, std::map<std::string, double>> closing_times(const std::vector<ProfileInput>& runs,
                                                                   double gamma) {
  if (runs.empty()) throw Error("gap-closed profile needs at least one trajectory");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw Error(fmt::format("gamma {} outside [0, 1]", gamma));

  std::set<std::string> methods;
  std::map<std::string, std::vector<const ProfileInput*>> by_instance;
  for (const auto& r : runs) {
    methods.insert(r.method);
    by_instance[r.instance].push_back(&r);
  }
  std::map<std::string, std::map<std::string, double>> out;
  for (const auto& [instance, group] : by_instance) {
    double baseline = milp::kInf;
    for (const auto* r : group) {
      if (!r->trajectory.records.empty()) baseline = std::min(baseline, baseline_of(r->trajectory));
    }
    double g = 0.0;
    for (const auto* r : group) {
      if (!r->trajectory.records.empty()) g = std::max(g, r->trajectory.final_lb() - baseline);
    }
    auto& row = out[instance];
    for (const auto& m : methods) row[m] = kNever;
    const double target = gamma * g;
    for (const auto* r : group) {
      for (const auto& rec : r->trajectory.records) {
        if (rec.lb - baseline >= target - 1e-12 * (1.0 + std::abs(target))) {
          row[r->method] = std::max(rec.time, 0.0);
          break;
        }
      }
    }
  }
  return out;
}

std::map<std::string, std::vector<ProfilePoint>> gap_closed_profile(const std::vector<ProfileInput>& runs,
                                                                    double gamma) {
  const auto times = closing_times(runs, gamma);
  std::set<double> events{0.0};
  for (const auto& [instance, row] : times) {
    for (const auto& [method, t] : row) {
      if (t != kNever) events.insert(t);
    }
  }
  const double n = static_cast<double>(times.size());
  std::map<std::string, std::vector<ProfilePoint>> out;
  for (const auto& [method, unused] : times.begin()->second) {
    auto& curve = out[method];
    for (double tau : events) {
      long hit = 0;
      for (const auto& [instance, row] : times) hit += row.at(method) <= tau ? 1 : 0;
      curve.push_back({tau, static_cast<double>(hit) / n});
    }
  }
  return out;
}

}  // namespace lagcut::bench
