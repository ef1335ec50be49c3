#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "lagcut/batch/run.hpp"
#include "lagcut/bench/config.hpp"
#include "lagcut/bench/experiment.hpp"
#include "lagcut/bench/report.hpp"
#include "lagcut/lab/generate.hpp"
#include "lagcut/lab/io.hpp"
#include "lagcut/lab/ranges.hpp"

namespace fs = std::filesystem;
using namespace lagcut;

namespace {

constexpr int kOk = 0;
constexpr int kCrash = 1;
constexpr int kConfigError = 2;
constexpr int kRejected = 3;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<double> time_limit;
  std::optional<int> jobs;
  std::optional<std::string> clock;
  std::optional<std::string> out;
};

bench::ExperimentConfig resolve_config(const Overrides& o) {
  bench::ExperimentConfig cfg = bench::load_experiment_config(o.config, o.seed);
  if (o.clock) cfg.clock = bench::parse_clock(*o.clock);
  if (o.time_limit) (cfg.clock == bench::ClockKind::Calls ? cfg.call_budget : cfg.time_limit) = *o.time_limit;
  if (o.jobs) cfg.jobs = *o.jobs;
  if (o.out) cfg.output_dir = *o.out;
  cfg.check();
  return cfg;
}

void add_common(CLI::App* cmd, Overrides& o, bool need_config) {
  auto* c = cmd->add_option("--config", o.config, "experiment config (JSON)")->check(CLI::ExistingFile);
  if (need_config) c->required();
  cmd->add_option("--seed", o.seed, "experiment seed");
  cmd->add_option("--time-limit", o.time_limit, "per-run limit in clock units");
  cmd->add_option("--jobs", o.jobs, "parallel run slots");
  cmd->add_option("--clock", o.clock, "wall or calls")->check(CLI::IsMember({"wall", "calls"}));
  cmd->add_option("--out", o.out, "output directory");
}

int cmd_gen(const Overrides& o, const lab::FamilyParams& params, const std::string& family, const std::string& preset,
            const std::string& ranges_path) {
  if (!o.config.empty()) {
    const bench::ExperimentConfig cfg = resolve_config(o);
    const fs::path dir = fs::path(cfg.output_dir) / "instances";
    fs::create_directories(dir);
    for (const auto& spec : cfg.instances) {
      if (!spec.params) continue;
      const fs::path path = dir / (bench::slug(spec.name) + ".json");
      lab::save(lab::generate(*spec.params, cfg.ranges), path.string());
      fmt::print("{}\n", path.string());
    }
    return kOk;
  }
  lab::FamilyParams p = params;
  try {
    p.family = lab::parse_family(family);
    p.preset = lab::parse_preset(preset);
    if (o.seed) p.seed = *o.seed;
    lab::check_params(p);
  } catch (const Error& e) {
    throw bench::ConfigError(e.what());
  }
  const lab::GeneratorRanges ranges = ranges_path.empty() ? lab::GeneratorRanges{} : lab::load_ranges(ranges_path);
  const smip::SmipInstance inst = lab::generate(p, ranges);
  if (!o.out || *o.out == "-") {
    std::cout << lab::to_json(inst) << '\n';
  } else {
    lab::save(inst, *o.out);
    fmt::print("{} n1={} n2={} m2={} scenarios={}\n", *o.out, inst.num_first, inst.num_second(),
               inst.num_second_rows(), inst.num_scenarios());
  }
  return kOk;
}

int cmd_run(const Overrides& o, bool quiet) {
  const bench::ExperimentConfig cfg = resolve_config(o);
  const bench::ExperimentResult res = bench::run_experiment(cfg, quiet ? nullptr : &std::cerr);
  bench::emit_report(res, cfg.output_dir);
  fmt::print("{} runs written to {}\n", res.runs.size(), cfg.output_dir);
  return res.any_crashed() ? kCrash : kOk;
}

std::string results_dir(const Overrides& o) {
  if (o.out) return *o.out;
  if (!o.config.empty()) return resolve_config(o).output_dir;
  throw bench::ConfigError("--out or --config is required to locate the results");
}

int cmd_profile(const Overrides& o, std::vector<double> gammas) {
  const std::string dir = results_dir(o);
  bench::ExperimentResult res = bench::load_results(dir);
  if (!gammas.empty()) res.gammas = gammas;
  std::vector<bench::ProfileInput> inputs;
  for (const auto& r : res.runs) inputs.push_back({r.instance, r.method, r.trajectory});
  for (double g : res.gammas) {
    const auto curves = bench::gap_closed_profile(inputs, g);
    const fs::path sub = fs::path(dir) / fmt::format("profiles/gamma_{:g}", g);
    fs::create_directories(sub);
    for (const auto& [method, pts] : curves) {
      std::ofstream(sub / (bench::slug(method) + ".dat")) << bench::profile_data(pts);
      fmt::print("gamma={:g} {:<24} final rho={:.3f}\n", g, method, pts.back().rho);
    }
    if (res.svg) std::ofstream(sub / "profile.svg") << bench::profile_svg(curves, g);
  }
  return kOk;
}

int cmd_report(const Overrides& o) {
  const std::string dir = results_dir(o);
  for (const auto& f : bench::emit_report(bench::load_results(dir), dir)) fmt::print("{}\n", f);
  return kOk;
}

int certify_one(const smip::SmipInstance& inst, const std::string& state_path, std::optional<double> eps,
                std::optional<double> delta, const std::string& label) {
  batch::RunConfig cfg;
  const benders::MasterState state = bench::load_state(inst, state_path, &cfg);
  if (eps) cfg.epsilon = *eps;
  if (delta) cfg.delta = *delta;
  const batch::Certificate c = batch::eps_optimality_certificate(
      inst, state, cfg.epsilon, [&](int s) { return batch::run_domain(cfg, state, s); }, cfg.delta);
  fmt::print("{} certificate {} weighted_violation={:.6g} threshold={:.6g}\n", label, c.ok ? "ok" : "REJECTED",
             c.weighted_violation, c.threshold);
  return c.ok ? kOk : kRejected;
}

int cmd_certify(const Overrides& o, const std::string& instance, const std::string& state, std::optional<double> eps,
                std::optional<double> delta) {
  if (!instance.empty() || !state.empty()) {
    if (instance.empty() || state.empty()) throw bench::ConfigError("--instance and --state go together");
    return certify_one(lab::load(instance), state, eps, delta, fs::path(state).stem().string());
  }
  const std::string dir = results_dir(o);
  const bench::ExperimentResult res = bench::load_results(dir);
  int code = kOk;
  int checked = 0;
  for (const auto& r : res.runs) {
    if (r.status != "eps_optimal") continue;
    ++checked;
    const auto inst = lab::load((fs::path(dir) / "instances" / (bench::slug(r.instance) + ".json")).string());
    if (certify_one(inst, (fs::path(dir) / r.state_file).string(), eps, delta, r.instance + " " + r.method) != kOk) {
      code = kRejected;
    }
  }
  fmt::print("{} eps-optimal runs replayed\n", checked);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Batched Lagrangian cut generation for two-stage stochastic MIPs"};
  app.require_subcommand(1);

  Overrides o;
  lab::FamilyParams params;
  std::string family = "sslp";
  std::string preset = "desk";
  std::string ranges;
  auto* gen = app.add_subcommand("gen", "generate instances");
  add_common(gen, o, false);
  gen->add_option("--family", family, "sslp, sslpv or smcf");
  gen->add_option("--preset", preset, "desk or paper");
  gen->add_option("--sites", params.sites);
  gen->add_option("--clients", params.clients);
  gen->add_option("--nodes", params.nodes);
  gen->add_option("--arcs,--edges", params.arcs);
  gen->add_option("--commodities", params.commodities);
  gen->add_option("--scenarios", params.scenarios);
  gen->add_option("--ranges", ranges, "generator ranges file")->check(CLI::ExistingFile);

  bool quiet = false;
  auto* run = app.add_subcommand("run", "run an experiment and write its report");
  add_common(run, o, true);
  run->add_flag("--quiet", quiet, "no per-run progress lines");

  std::vector<double> gammas;
  auto* profile = app.add_subcommand("profile", "gamma-gap-closed profiles of a finished experiment");
  add_common(profile, o, false);
  profile->add_option("--gamma", gammas, "thresholds (default: those of the experiment)");

  auto* report = app.add_subcommand("report", "regenerate the report of a finished experiment");
  add_common(report, o, false);

  std::string instance, state;
  std::optional<double> eps, delta;
  auto* certify = app.add_subcommand("certify", "replay eps-optimality certificates");
  add_common(certify, o, false);
  certify->add_option("--instance", instance, "instance JSON")->check(CLI::ExistingFile);
  certify->add_option("--state", state, "master state JSON")->check(CLI::ExistingFile);
  certify->add_option("--epsilon", eps);
  certify->add_option("--delta", delta);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*gen) return cmd_gen(o, params, family, preset, ranges);
    if (*run) return cmd_run(o, quiet);
    if (*profile) return cmd_profile(o, gammas);
    if (*report) return cmd_report(o);
    if (*certify) return cmd_certify(o, instance, state, eps, delta);
  } catch (const bench::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kCrash;
  }
  return kOk;
}
