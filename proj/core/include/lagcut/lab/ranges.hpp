#pragma once

#include <string>

namespace lagcut::lab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sampling ranges for the generators. Integer-valued draws are uniform over
/// the integers in [lo, hi].
struct GeneratorRanges {
  std::string version = "v1";

  // server location
  Interval site_cost{40, 80};
  Interval assign_cost{0, 25};
  Interval client_demand{0, 25};
  double availability = 0.5;    // probability a client shows up
  double capacity_factor = 3.0; // site capacity relative to the fair share of expected demand
  double overflow_cost = 100.0;

  // multicommodity network design
  Interval arc_open_cost{20, 60};
  Interval arc_flow_cost{1, 5};
  Interval arc_capacity{10, 30};
  Interval commodity_demand{5, 15};
  double unmet_cost = 100.0;

  friend bool operator==(const GeneratorRanges&, const GeneratorRanges&) = default;
};

/// Reads a ranges file (JSON); missing keys keep their defaults.
GeneratorRanges load_ranges(const std::string& path);
void save_ranges(const GeneratorRanges& ranges, const std::string& path);

}  // namespace lagcut::lab
