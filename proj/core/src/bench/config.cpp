#include "lagcut/bench/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

namespace lagcut::bench {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::set<std::string> kMethodKeys{"name",  "paradigm", "beta",  "epsilon",  "delta",  "K",
                                         "radius", "pi0",      "averaged", "stats", "policy", "label",
                                         "max_resolves", "stall_window"};

[[noreturn]] void fail(const std::string& where, const std::string& msg) {
  throw ConfigError(fmt::format("config field '{}': {}", where, msg));
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

bool flag(const json& j, const std::string& where) {
  if (!j.is_boolean()) fail(where, "expected true or false");
  return j.get<bool>();
}

std::string resolve(const std::string& base, const std::string& path) {
  const fs::path p(path);
  return p.is_absolute() ? path : (fs::path(base) / p).lexically_normal().string();
}

void apply_method_fields(const json& j, const std::string& where, batch::RunConfig& run, std::string& label) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    const std::string at = where + "." + key;
    if (!kMethodKeys.contains(key)) fail(at, "unknown method field");
    try {
      if (key == "name") {
        batch::apply_method_name(run, text(value, at));
      } else if (key == "paradigm") {
        const std::string p = text(value, at);
        if (p == "exact" || p == "Exact") {
          run.paradigm = batch::Paradigm::Exact;
        } else if (p == "rstrmip" || p == "RstrMIP") {
          run.paradigm = batch::Paradigm::RstrMIP;
        } else {
          fail(at, "expected \"exact\" or \"rstrmip\"");
        }
      } else if (key == "beta") {
        run.beta = value.is_null() || value == "no-batch" ? 1.0 : number(value, at);
      } else if (key == "epsilon") {
        run.epsilon = number(value, at);
      } else if (key == "delta") {
        run.delta = number(value, at);
        run.stats_delta = run.delta;
      } else if (key == "K") {
        run.subspace_size = integer(value, at);
      } else if (key == "radius") {
        run.radius = number(value, at);
      } else if (key == "pi0") {
        const std::string p = text(value, at);
        if (p != "fixed" && p != "free") fail(at, "expected \"fixed\" or \"free\"");
        run.pi0_fixed = p == "fixed";
      } else if (key == "averaged") {
        run.averaged_cuts = flag(value, at);
      } else if (key == "stats") {
        run.collect_stats = flag(value, at);
      } else if (key == "policy") {
        run.policy = batch::parse_policy(text(value, at));
      } else if (key == "label") {
        label = text(value, at);
      } else if (key == "max_resolves") {
        run.max_resolves = integer(value, at);
      } else if (key == "stall_window") {
        run.stall_window = integer(value, at);
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail(at, e.what());
    }
  }
}

std::vector<InstanceSpec> parse_instances(const json& j, const std::string& base, std::uint64_t seed) {
  if (!j.is_array() || j.empty()) fail("instances", "expected a non-empty array");
  std::vector<InstanceSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    const std::string where = fmt::format("instances[{}]", i);
    if (e.is_string() || (e.is_object() && e.contains("path"))) {
      InstanceSpec spec;
      spec.family = e.is_object() && e.contains("family") ? text(e["family"], where + ".family") : "file";
      spec.path = resolve(base, e.is_string() ? e.get<std::string>() : text(e["path"], where + ".path"));
      spec.name = e.is_object() && e.contains("name") ? text(e["name"], where + ".name")
                                                       : fs::path(spec.path).stem().string();
      out.push_back(std::move(spec));
      continue;
    }
    if (!e.is_object() || !e.contains("family")) fail(where, "expected a path or a generator object with 'family'");
    lab::FamilyParams p;
    try {
      p.family = lab::parse_family(text(e["family"], where + ".family"));
      if (e.contains("preset")) p.preset = lab::parse_preset(text(e["preset"], where + ".preset"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& err) {
      fail(where, err.what());
    }
    auto read_int = [&](const char* key, int& field) {
      if (e.contains(key)) field = integer(e[key], where + "." + key);
    };
    read_int("sites", p.sites);
    read_int("clients", p.clients);
    read_int("nodes", p.nodes);
    read_int("arcs", p.arcs);
    read_int("edges", p.arcs);
    read_int("commodities", p.commodities);
    read_int("scenarios", p.scenarios);
    std::vector<std::uint64_t> seeds;
    if (e.contains("seeds")) {
      if (!e["seeds"].is_array()) fail(where + ".seeds", "expected an array");
      for (const auto& s : e["seeds"]) seeds.push_back(static_cast<std::uint64_t>(integer(s, where + ".seeds")));
    } else if (e.contains("count")) {
      const int n = integer(e["count"], where + ".count");
      if (n < 1) fail(where + ".count", "expected a positive count");
      for (int k = 0; k < n; ++k) seeds.push_back(seed + static_cast<std::uint64_t>(k));
    } else if (e.contains("seed")) {
      seeds.push_back(static_cast<std::uint64_t>(integer(e["seed"], where + ".seed")));
    } else {
      seeds.push_back(seed);
    }
    for (std::uint64_t s : seeds) {
      p.seed = s;
      try {
        lab::check_params(p);
      } catch (const Error& err) {
        fail(where, err.what());
      }
      InstanceSpec spec;
      spec.family = lab::to_string(p.family);
      spec.params = p;
      spec.name = p.family == lab::Family::Smcf
                      ? fmt::format("smcf-{}-{}-{}-{}-s{}", p.nodes, p.arcs, p.commodities, p.scenarios, s)
                      : fmt::format("{}-{}-{}-{}-s{}", spec.family, p.sites, p.clients, p.scenarios, s);
      out.push_back(std::move(spec));
    }
  }
  return out;
}

struct Parsed {
  json doc;
  std::string base;
};

ExperimentConfig build(const Parsed& in, std::optional<std::uint64_t> seed_override) {
  const json& doc = in.doc;
  static const std::set<std::string> keys{"seed", "time_limit", "call_budget", "clock", "jobs", "gammas",
                                          "output_dir", "ranges", "instances", "defaults", "methods",
                                          "branch_and_cut", "svg"};
  for (const auto& [key, value] : doc.items()) {
    if (!keys.contains(key)) fail(key, "unknown field");
  }
  ExperimentConfig cfg;
  if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(integer(doc["seed"], "seed"));
  if (seed_override) cfg.seed = *seed_override;
  if (doc.contains("time_limit")) cfg.time_limit = number(doc["time_limit"], "time_limit");
  if (doc.contains("call_budget")) cfg.call_budget = number(doc["call_budget"], "call_budget");
  if (doc.contains("clock")) {
    try {
      cfg.clock = parse_clock(text(doc["clock"], "clock"));
    } catch (const Error& e) {
      fail("clock", e.what());
    }
  }
  if (doc.contains("jobs")) cfg.jobs = integer(doc["jobs"], "jobs");
  if (doc.contains("gammas")) {
    if (!doc["gammas"].is_array()) fail("gammas", "expected an array");
    cfg.gammas.clear();
    for (const auto& g : doc["gammas"]) cfg.gammas.push_back(number(g, "gammas"));
  }
  if (doc.contains("output_dir")) cfg.output_dir = resolve(in.base, text(doc["output_dir"], "output_dir"));
  if (doc.contains("svg")) cfg.svg = flag(doc["svg"], "svg");
  if (doc.contains("ranges")) {
    try {
      cfg.ranges = lab::load_ranges(resolve(in.base, text(doc["ranges"], "ranges")));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      fail("ranges", e.what());
    }
  }
  if (doc.contains("branch_and_cut")) {
    const json& b = doc["branch_and_cut"];
    if (!b.is_object()) fail("branch_and_cut", "expected an object");
    for (const auto& [key, value] : b.items()) {
      const std::string at = "branch_and_cut." + key;
      if (key == "enabled") {
        cfg.bc.enabled = flag(value, at);
      } else if (key == "time_limit") {
        cfg.bc.time_limit = number(value, at);
      } else if (key == "call_budget") {
        cfg.bc.call_budget = number(value, at);
      } else if (key == "node_limit") {
        cfg.bc.node_limit = integer(value, at);
      } else {
        fail(at, "unknown field");
      }
    }
  }
  if (!doc.contains("instances")) fail("instances", "missing");
  cfg.instances = parse_instances(doc["instances"], in.base, cfg.seed);

  batch::RunConfig defaults;
  std::string unused;
  if (doc.contains("defaults")) apply_method_fields(doc["defaults"], "defaults", defaults, unused);
  if (!doc.contains("methods")) fail("methods", "missing");
  const json& methods = doc["methods"];
  if (!methods.is_array() || methods.empty()) fail("methods", "expected a non-empty array");
  for (std::size_t i = 0; i < methods.size(); ++i) {
    const std::string where = fmt::format("methods[{}]", i);
    MethodSpec m;
    m.run = defaults;
    if (methods[i].is_string()) {
      try {
        batch::apply_method_name(m.run, methods[i].get<std::string>());
      } catch (const Error& e) {
        fail(where, e.what());
      }
    } else {
      apply_method_fields(methods[i], where, m.run, m.label);
    }
    m.run.seed = cfg.seed;
    if (m.label.empty()) m.label = m.run.method_name() + (m.run.averaged_cuts ? "-Avg" : "");
    try {
      m.run.check();
    } catch (const Error& e) {
      fail(where, e.what());
    }
    cfg.methods.push_back(std::move(m));
  }
  cfg.check();
  return cfg;
}

}  // namespace

const char* to_string(ClockKind c) { return c == ClockKind::Calls ? "calls" : "wall"; }

ClockKind parse_clock(const std::string& name) {
  if (name == "wall") return ClockKind::Wall;
  if (name == "calls") return ClockKind::Calls;
  throw ConfigError(fmt::format("unknown clock '{}', expected wall or calls", name));
}

void ExperimentConfig::check() const {
  if (instances.empty()) throw ConfigError("experiment has no instances");
  if (methods.empty()) throw ConfigError("experiment has at least one method");
  std::set<std::string> names;
  for (const auto& i : instances) {
    if (!names.insert(i.name).second) throw ConfigError(fmt::format("instance name '{}' appears twice", i.name));
  }
  names.clear();
  for (const auto& m : methods) {
    if (!names.insert(m.label).second) throw ConfigError(fmt::format("method label '{}' appears twice", m.label));
  }
  for (double g : gammas) {
    if (!(g > 0.0 && g <= 1.0)) throw ConfigError(fmt::format("gamma {} outside (0, 1]", g));
  }
  if (!(time_limit > 0.0)) throw ConfigError("time_limit must be positive");
  if (!(call_budget > 0.0)) throw ConfigError("call_budget must be positive");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
}

namespace {

Parsed parse_doc(const std::string& text, const std::string& base) {
  Parsed p;
  p.base = base;
  try {
    p.doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config is not valid JSON: {}", e.what()));
  }
  if (!p.doc.is_object()) throw ConfigError("config must be a JSON object");
  return p;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text, const std::string& base_dir,
                                         std::optional<std::uint64_t> seed_override) {
  return build(parse_doc(json_text, base_dir), seed_override);
}

ExperimentConfig load_experiment_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string base = fs::absolute(path).parent_path().string();
  return parse_experiment_config(buf.str(), base, seed_override);
}

}  // namespace lagcut::bench
