#include "lagcut/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "lagcut/bench/report.hpp"
#include "lagcut/lab/io.hpp"

namespace lagcut::bench {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double from_number_or_null(const json& j) { return j.is_null() ? milp::kInf : j.get<double>(); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string strength_csv(const std::vector<averaged::StrengthRecord>& records) {
  std::string out = "scenario,avg_violation,exact_violation,strength\n";
  for (const auto& r : records) {
    out += fmt::format("{},{:.17g},{:.17g},{:.17g}\n", r.scenario, r.avg_violation, r.exact_violation, r.strength);
  }
  return out;
}

std::vector<averaged::StrengthRecord> parse_strength_csv(const std::string& text) {
  std::vector<averaged::StrengthRecord> out;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    averaged::StrengthRecord r;
    char c1 = 0, c2 = 0, c3 = 0;
    std::istringstream ls(line);
    if (!(ls >> r.scenario >> c1 >> r.avg_violation >> c2 >> r.exact_violation >> c3 >> r.strength)) {
      throw Error("malformed strength record: " + line);
    }
    out.push_back(r);
  }
  return out;
}

json run_json(const RunRecord& r) {
  return {{"instance", r.instance},
          {"family", r.family},
          {"method", r.method},
          {"beta", r.beta},
          {"delta", r.delta},
          {"seed", r.seed},
          {"status", r.status},
          {"error", r.error},
          {"baseline_lb", number_or_null(r.baseline_lb)},
          {"final_lb", number_or_null(r.final_lb)},
          {"cut_time", r.cut_time},
          {"sweeps", r.sweeps},
          {"separations", r.separations},
          {"resolves", r.resolves},
          {"branch_and_cut",
           {{"ran", r.bc_ran},
            {"solved", r.bc.solved},
            {"lb", number_or_null(r.bc.lower_bound)},
            {"ub", number_or_null(r.bc.upper_bound)},
            {"gap_percent", number_or_null(r.bc.gap_percent)},
            {"nodes", r.bc.nodes},
            {"rounds", r.bc.rounds},
            {"time", r.bc.time}}},
          {"trajectory", r.trajectory_file},
          {"state", r.state_file},
          {"strength", r.strength_file}};
}

RunRecord run_from_json(const json& j) {
  RunRecord r;
  r.instance = j.at("instance").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.beta = j.at("beta").get<double>();
  r.delta = j.at("delta").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.status = j.at("status").get<std::string>();
  r.error = j.at("error").get<std::string>();
  r.baseline_lb = from_number_or_null(j.at("baseline_lb"));
  r.final_lb = from_number_or_null(j.at("final_lb"));
  r.cut_time = j.at("cut_time").get<double>();
  r.sweeps = j.at("sweeps").get<long>();
  r.separations = j.at("separations").get<long>();
  r.resolves = j.at("resolves").get<long>();
  const json& b = j.at("branch_and_cut");
  r.bc_ran = b.at("ran").get<bool>();
  r.bc.solved = b.at("solved").get<bool>();
  r.bc.lower_bound = from_number_or_null(b.at("lb"));
  r.bc.upper_bound = from_number_or_null(b.at("ub"));
  r.bc.gap_percent = from_number_or_null(b.at("gap_percent"));
  r.bc.nodes = b.at("nodes").get<long>();
  r.bc.rounds = b.at("rounds").get<int>();
  r.bc.time = b.at("time").get<double>();
  r.trajectory_file = j.at("trajectory").get<std::string>();
  r.state_file = j.at("state").get<std::string>();
  r.strength_file = j.at("strength").get<std::string>();
  return r;
}

struct Task {
  const InstanceSpec* spec;
  const smip::SmipInstance* inst;
  const MethodSpec* method;
};

RunRecord execute(const ExperimentConfig& cfg, const Task& task, const fs::path& out) {
  RunRecord rec;
  rec.instance = task.spec->name;
  rec.family = task.spec->family;
  rec.method = task.method->label;
  rec.beta = task.method->run.beta;
  rec.delta = task.method->run.delta;
  rec.seed = task.method->run.seed;
  const std::string stem = slug(rec.instance) + "__" + slug(rec.method);
  rec.trajectory_file = "trajectories/" + stem + ".csv";

  milp::CountingBackend counter(milp::bundled_backend());
  const WallClock wall;
  const CallClock calls(counter);
  Context ctx;
  ctx.backend = &counter;
  ctx.clock = cfg.clock == ClockKind::Calls ? static_cast<const Clock*>(&calls) : &wall;

  batch::RunConfig rc = task.method->run;
  rc.time_limit = cfg.run_limit();
  try {
    const batch::RunResult res = batch::run(*task.inst, rc, ctx);
    rec.trajectory = res.trajectory;
    rec.status = batch::to_string(res.trajectory.status);
    rec.baseline_lb = res.trajectory.records.front().lb;
    rec.final_lb = res.trajectory.final_lb();
    rec.cut_time = res.total_time;
    rec.sweeps = res.sweeps;
    rec.separations = res.separations;
    rec.resolves = res.master_resolves;
    rec.strength = res.strength_records;
    rec.state_file = "states/" + stem + ".json";
    save_state(res.state, rc, (out / rec.state_file).string());
    if (!rec.strength.empty()) {
      rec.strength_file = "strength/" + stem + ".csv";
      write_file(out / rec.strength_file, strength_csv(rec.strength));
    }
    if (cfg.bc.enabled) {
      BcOptions bo;
      bo.time_limit = cfg.bc_limit();
      bo.node_limit = cfg.bc.node_limit;
      if (cfg.clock == ClockKind::Wall) bo.wall_limit = cfg.bc.time_limit;
      rec.bc = branch_and_cut(*task.inst, res.state, bo, ctx);
      rec.bc_ran = true;
    }
  } catch (const std::exception& e) {
    rec.status = "crashed";
    rec.error = e.what();
  }
  std::ostringstream traj;
  batch::write_trajectory_csv(rec.trajectory, traj);
  write_file(out / rec.trajectory_file, traj.str());
  return rec;
}

}  // namespace

bool ExperimentResult::any_crashed() const {
  return std::any_of(runs.begin(), runs.end(), [](const RunRecord& r) { return r.crashed(); });
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::ostream* log) {
  cfg.check();
  const fs::path out(cfg.output_dir);
  fs::create_directories(out / "instances");

  std::vector<smip::SmipInstance> instances;
  for (const auto& spec : cfg.instances) {
    try {
      instances.push_back(spec.params ? lab::generate(*spec.params, cfg.ranges) : lab::load(spec.path));
      smip::require_valid(instances.back());
    } catch (const std::exception& e) {
      throw ConfigError(fmt::format("instance '{}': {}", spec.name, e.what()));
    }
    lab::save(instances.back(), (out / "instances" / (slug(spec.name) + ".json")).string());
  }

  std::vector<Task> tasks;
  for (std::size_t i = 0; i < cfg.instances.size(); ++i) {
    for (const auto& m : cfg.methods) tasks.push_back({&cfg.instances[i], &instances[i], &m});
  }
  ExperimentResult result;
  result.gammas = cfg.gammas;
  result.clock = to_string(cfg.clock);
  result.svg = cfg.svg;
  result.runs.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      result.runs[k] = execute(cfg, tasks[k], out);
      const RunRecord& r = result.runs[k];
      const std::size_t finished = ++done;
      if (log != nullptr) {
        const std::lock_guard lock(log_mutex);
        fmt::print(*log, "[{}/{}] {} {} {} lb={:.10g}{}\n", finished, tasks.size(), r.instance, r.method, r.status,
                   r.final_lb, r.crashed() ? " error: " + r.error : "");
        log->flush();
      }
    }
  };
  const int slots = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(tasks.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < slots; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json manifest;
  manifest["seed"] = cfg.seed;
  manifest["clock"] = result.clock;
  manifest["time_limit"] = cfg.run_limit();
  manifest["gammas"] = cfg.gammas;
  manifest["svg"] = cfg.svg;
  manifest["generator_ranges"] = cfg.ranges.version;
  manifest["baseline"] =
      "gap baseline is the lower bound at time 0, i.e. after the Benders root loop; profile times exclude the "
      "Benders phase";
  manifest["time_unit"] = cfg.clock == ClockKind::Calls ? "solver calls" : "seconds";
  json runs = json::array();
  for (const auto& r : result.runs) runs.push_back(run_json(r));
  manifest["runs"] = std::move(runs);
  write_file(out / "manifest.json", manifest.dump(2) + "\n");
  return result;
}

ExperimentResult load_results(const std::string& dir) {
  const fs::path root(dir);
  json manifest;
  try {
    manifest = json::parse(read_file(root / "manifest.json"));
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: malformed manifest: {}", dir, e.what()));
  }
  ExperimentResult result;
  try {
    result.gammas = manifest.at("gammas").get<std::vector<double>>();
    result.clock = manifest.at("clock").get<std::string>();
    result.svg = manifest.value("svg", true);
    for (const auto& j : manifest.at("runs")) result.runs.push_back(run_from_json(j));
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: malformed manifest: {}", dir, e.what()));
  }
  for (auto& r : result.runs) {
    std::istringstream traj(read_file(root / r.trajectory_file));
    r.trajectory = batch::read_trajectory_csv(traj);
    if (!r.strength_file.empty()) r.strength = parse_strength_csv(read_file(root / r.strength_file));
  }
  return result;
}

void save_state(const benders::MasterState& state, const batch::RunConfig& cfg, const std::string& path) {
  json cuts = json::array();
  for (const auto& pool : state.pools()) {
    for (const auto& c : pool) {
      cuts.push_back({{"scenario", c.scenario},
                      {"kind", benders::to_string(c.kind)},
                      {"pi", c.pi},
                      {"pi0", c.pi0},
                      {"rhs", c.rhs},
                      {"birth", c.birth_iteration}});
    }
  }
  const json j{{"x", state.x},
               {"theta", state.theta},
               {"lower_bound", state.lower_bound},
               {"iteration", state.iteration},
               {"config",
                {{"paradigm", batch::to_string(cfg.paradigm)},
                 {"beta", cfg.beta},
                 {"epsilon", cfg.epsilon},
                 {"delta", cfg.delta},
                 {"K", cfg.subspace_size},
                 {"radius", cfg.radius},
                 {"pi0", cfg.pi0_fixed ? "fixed" : "free"}}},
               {"cuts", std::move(cuts)}};
  write_file(path, j.dump(1) + "\n");
}

benders::MasterState load_state(const smip::SmipInstance& inst, const std::string& path, batch::RunConfig* cfg) {
  benders::MasterState state(inst);
  try {
    const json j = json::parse(read_file(path));
    state.x = j.at("x").get<std::vector<double>>();
    state.theta = j.at("theta").get<std::vector<double>>();
    state.lower_bound = j.at("lower_bound").get<double>();
    state.iteration = j.at("iteration").get<int>();
    if (static_cast<int>(state.x.size()) != inst.num_first || state.theta.size() != inst.scenarios.size()) {
      throw Error(fmt::format("{}: state does not match the instance dimensions", path));
    }
    for (const auto& c : j.at("cuts")) {
      benders::Cut cut;
      cut.scenario = c.at("scenario").get<int>();
      const std::string kind = c.at("kind").get<std::string>();
      for (auto k : {benders::CutKind::Benders, benders::CutKind::Lagrangian, benders::CutKind::Averaged}) {
        if (kind == benders::to_string(k)) cut.kind = k;
      }
      cut.pi = c.at("pi").get<std::vector<double>>();
      cut.pi0 = c.at("pi0").get<double>();
      cut.rhs = c.at("rhs").get<double>();
      cut.birth_iteration = c.at("birth").get<int>();
      state.add_cut(std::move(cut));
    }
    if (cfg != nullptr) {
      const json& k = j.at("config");
      cfg->paradigm = k.at("paradigm").get<std::string>() == "RstrMIP" ? batch::Paradigm::RstrMIP : batch::Paradigm::Exact;
      cfg->beta = k.at("beta").get<double>();
      cfg->epsilon = k.at("epsilon").get<double>();
      cfg->delta = k.at("delta").get<double>();
      cfg->subspace_size = k.at("K").get<int>();
      cfg->radius = k.at("radius").get<double>();
      cfg->pi0_fixed = k.at("pi0").get<std::string>() == "fixed";
    }
  } catch (const json::exception& e) {
    throw Error(fmt::format("{}: malformed state file: {}", path, e.what()));
  }
  return state;
}

}  // namespace lagcut::bench
