#include "lagcut/lab/ranges.hpp"

#include <fstream>

#include <json.hpp>

#include "lagcut/error.hpp"

namespace lagcut::lab {

namespace {

using nlohmann::json;

void read(const json& j, const char* key, double& out) {
  if (j.contains(key)) out = j.at(key).get<double>();
}

void read(const json& j, const char* key, Interval& out) {
  if (!j.contains(key)) return;
  const json& v = j.at(key);
  if (!v.is_array() || v.size() != 2) throw Error(std::string("ranges field '") + key + "' must be [lo, hi]");
  out = {v[0].get<double>(), v[1].get<double>()};
}

}  // namespace

GeneratorRanges load_ranges(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open ranges file " + path);
  GeneratorRanges r;
  try {
    const json j = json::parse(in);
    if (j.contains("version")) r.version = j.at("version").get<std::string>();
    read(j, "site_cost", r.site_cost);
    read(j, "assign_cost", r.assign_cost);
    read(j, "client_demand", r.client_demand);
    read(j, "availability", r.availability);
    read(j, "capacity_factor", r.capacity_factor);
    read(j, "overflow_cost", r.overflow_cost);
    read(j, "arc_open_cost", r.arc_open_cost);
    read(j, "arc_flow_cost", r.arc_flow_cost);
    read(j, "arc_capacity", r.arc_capacity);
    read(j, "commodity_demand", r.commodity_demand);
    read(j, "unmet_cost", r.unmet_cost);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
  return r;
}

void save_ranges(const GeneratorRanges& r, const std::string& path) {
  auto pair = [](const Interval& i) { return json::array({i.lo, i.hi}); };
  json j;
  j["version"] = r.version;
  j["site_cost"] = pair(r.site_cost);
  j["assign_cost"] = pair(r.assign_cost);
  j["client_demand"] = pair(r.client_demand);
  j["availability"] = r.availability;
  j["capacity_factor"] = r.capacity_factor;
  j["overflow_cost"] = r.overflow_cost;
  j["arc_open_cost"] = pair(r.arc_open_cost);
  j["arc_flow_cost"] = pair(r.arc_flow_cost);
  j["arc_capacity"] = pair(r.arc_capacity);
  j["commodity_demand"] = pair(r.commodity_demand);
  j["unmet_cost"] = r.unmet_cost;
  std::ofstream out(path);
  if (!out) throw Error("cannot write ranges file " + path);
  out << j.dump(2) << '\n';
}

}  // namespace lagcut::lab
