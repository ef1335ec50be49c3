#pragma once

#include <cstdint>
#include <string>

#include "lagcut/lab/ranges.hpp"
#include "lagcut/smip/instance.hpp"

namespace lagcut::lab {

enum class Family { Sslp, Sslpv, Smcf };
enum class ScalePreset { Desk, Paper };

const char* to_string(Family f);
Family parse_family(const std::string& name);
const char* to_string(ScalePreset p);
ScalePreset parse_preset(const std::string& name);

struct FamilyParams {
  Family family = Family::Sslp;
  int sites = 5;        // sslp, sslpv
  int clients = 8;      // sslp, sslpv
  int nodes = 4;        // smcf
  int arcs = 8;         // smcf
  int commodities = 5;  // smcf
  int scenarios = 4;
  std::uint64_t seed = 1;
  ScalePreset preset = ScalePreset::Desk;
};

inline constexpr int kDeskMaxFirst = 10;
inline constexpr int kDeskMaxScenarios = 20;
inline constexpr int kDeskMaxSecond = 60;

/// First- and second-stage sizes the generator will produce for `p`.
struct GeneratedShape {
  int n1 = 0;
  int n2 = 0;
  int m2 = 0;
};
GeneratedShape generated_shape(const FamilyParams& p);

/// Throws Error when the parameters fall outside their preset.
void check_params(const FamilyParams& p);

/// Deterministic under (params, ranges).
smip::SmipInstance generate(const FamilyParams& params, const GeneratorRanges& ranges = {});

}  // namespace lagcut::lab
