#include "lagcut/lab/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <utility>

#include <fmt/format.h>

#include "lagcut/error.hpp"

namespace lagcut::lab {

const char* to_string(Family f) {
  switch (f) {
    case Family::Sslp: return "sslp";
    case Family::Sslpv: return "sslpv";
    case Family::Smcf: return "smcf";
  }
  return "unknown";
}

Family parse_family(const std::string& name) {
  for (Family f : {Family::Sslp, Family::Sslpv, Family::Smcf}) {
    if (name == to_string(f)) return f;
  }
  throw Error(fmt::format("unknown instance family '{}'", name));
}

const char* to_string(ScalePreset p) { return p == ScalePreset::Desk ? "desk" : "paper"; }

ScalePreset parse_preset(const std::string& name) {
  if (name == "desk") return ScalePreset::Desk;
  if (name == "paper") return ScalePreset::Paper;
  throw Error(fmt::format("unknown scale preset '{}'", name));
}

GeneratedShape generated_shape(const FamilyParams& p) {
  if (p.family == Family::Smcf) {
    return {p.arcs, p.arcs * p.commodities + p.commodities, p.nodes * p.commodities + p.arcs + p.arcs * p.commodities};
  }
  return {p.sites, p.sites * p.clients + p.sites, p.sites + p.clients};
}

void check_params(const FamilyParams& p) {
  auto fail = [&](const std::string& msg) {
    throw Error(fmt::format("{} {} parameters: {}", to_string(p.preset), to_string(p.family), msg));
  };
  if (p.scenarios < 1) fail("need at least one scenario");
  if (p.family == Family::Smcf) {
    if (p.nodes < 2 || p.arcs < 1 || p.commodities < 1) fail("need nodes >= 2, arcs >= 1, commodities >= 1");
    if (p.arcs > p.nodes * (p.nodes - 1)) fail(fmt::format("{} arcs do not fit {} nodes", p.arcs, p.nodes));
  } else if (p.sites < 1 || p.clients < 1) {
    fail("need sites >= 1 and clients >= 1");
  }
  const GeneratedShape shape = generated_shape(p);
  if (p.preset == ScalePreset::Desk) {
    if (shape.n1 > kDeskMaxFirst) fail(fmt::format("n1={} exceeds {}", shape.n1, kDeskMaxFirst));
    if (p.scenarios > kDeskMaxScenarios) fail(fmt::format("|S|={} exceeds {}", p.scenarios, kDeskMaxScenarios));
    if (shape.n2 > kDeskMaxSecond) fail(fmt::format("n2={} exceeds {}", shape.n2, kDeskMaxSecond));
    return;
  }
  if (p.family == Family::Smcf) {
    if (p.nodes != 10 || p.arcs != 60 || p.commodities != 10 || p.scenarios != 500) {
      fail("paper smcf is 10 nodes, 60 arcs, 10 commodities, 500 scenarios");
    }
    return;
  }
  const std::set<std::pair<int, int>> sizes{{40, 50}, {30, 70}, {20, 100}, {50, 40}};
  if (!sizes.contains({p.sites, p.clients})) fail(fmt::format("no paper configuration with {}-{}", p.sites, p.clients));
  if (p.scenarios != 50 && p.scenarios != 200) fail("paper scenario counts are 50 and 200");
}

namespace {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double integer(const Interval& r) {
    const auto lo = static_cast<long>(std::ceil(r.lo));
    const auto hi = static_cast<long>(std::floor(r.hi));
    if (hi <= lo) return static_cast<double>(lo);
    return static_cast<double>(lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)));
  }
  bool bernoulli(double p) { return static_cast<double>(rng_() >> 11) * 0x1.0p-53 < p; }
  int index(int n) { return static_cast<int>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 rng_;
};

smip::SmipInstance base(const FamilyParams& p, int n1) {
  smip::SmipInstance inst;
  inst.name = p.family == Family::Smcf
                  ? fmt::format("smcf-{}-{}-{}-{}-s{}", p.nodes, p.arcs, p.commodities, p.scenarios, p.seed)
                  : fmt::format("{}-{}-{}-{}-s{}", to_string(p.family), p.sites, p.clients, p.scenarios, p.seed);
  inst.num_first = n1;
  inst.num_integer = n1;
  inst.first_stage = SparseMatrix(0, n1);
  inst.upper.assign(static_cast<std::size_t>(n1), 1.0);
  return inst;
}

smip::SmipInstance server_location(const FamilyParams& p, const GeneratorRanges& r) {
  Draw draw(p.seed);
  const int n = p.sites;
  const int J = p.clients;
  smip::SmipInstance inst = base(p, n);
  for (int j = 0; j < n; ++j) inst.cost.push_back(draw.integer(r.site_cost));

  std::vector<std::vector<double>> q(static_cast<std::size_t>(J)), d(static_cast<std::size_t>(J));
  double fair = 0.0;
  for (int i = 0; i < J; ++i) {
    double mean = 0.0;
    for (int j = 0; j < n; ++j) {
      q[static_cast<std::size_t>(i)].push_back(draw.integer(r.assign_cost));
      d[static_cast<std::size_t>(i)].push_back(draw.integer(r.client_demand));
      mean += d[static_cast<std::size_t>(i)].back();
    }
    fair += mean / n;
  }
  const double capacity = std::max(1.0, std::ceil(r.capacity_factor * r.availability * fair / n));

  // columns: overflow per site, then assignments y_ij at n + i*n + j
  const int n2 = n + J * n;
  const int m2 = J + n;
  std::vector<double> cost;
  for (int j = 0; j < n; ++j) cost.push_back(r.overflow_cost);
  for (int i = 0; i < J; ++i) {
    for (int j = 0; j < n; ++j) cost.push_back(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  }
  std::vector<Triplet> t, w;
  for (int i = 0; i < J; ++i) {
    for (int j = 0; j < n; ++j) w.push_back({i, n + i * n + j, 1.0});
  }
  for (int j = 0; j < n; ++j) {
    t.push_back({J + j, j, capacity});
    w.push_back({J + j, j, 1.0});
    for (int i = 0; i < J; ++i) {
      const double dij = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (dij != 0.0) w.push_back({J + j, n + i * n + j, -dij});
    }
  }
  const SparseMatrix tech = SparseMatrix::from_triplets(m2, n, t);
  const SparseMatrix rec = SparseMatrix::from_triplets(m2, n2, w);
  for (int s = 0; s < p.scenarios; ++s) {
    smip::Scenario sc;
    sc.probability = 1.0 / p.scenarios;
    sc.cost = cost;
    sc.technology = tech;
    sc.recourse = rec;
    sc.rhs.assign(static_cast<std::size_t>(m2), 0.0);
    for (int i = 0; i < J; ++i) sc.rhs[static_cast<std::size_t>(i)] = draw.bernoulli(r.availability) ? 1.0 : 0.0;
    inst.scenarios.push_back(std::move(sc));
  }
  inst.num_integer_recourse = p.family == Family::Sslp ? J * n : 0;
  return inst;
}

smip::SmipInstance network_design(const FamilyParams& p, const GeneratorRanges& r) {
  Draw draw(p.seed);
  const int N = p.nodes;
  const int E = p.arcs;
  const int K = p.commodities;
  smip::SmipInstance inst = base(p, E);

  std::vector<std::pair<int, int>> arcs;
  std::set<std::pair<int, int>> used;
  if (E >= N) {
    for (int v = 0; v < N; ++v) {
      arcs.emplace_back(v, (v + 1) % N);
      used.insert(arcs.back());
    }
  }
  while (static_cast<int>(arcs.size()) < E) {
    const int a = draw.index(N);
    const int b = draw.index(N);
    if (a == b || used.contains({a, b})) continue;
    arcs.emplace_back(a, b);
    used.insert({a, b});
  }
  std::vector<double> flow_cost, cap;
  for (int e = 0; e < E; ++e) {
    inst.cost.push_back(draw.integer(r.arc_open_cost));
    flow_cost.push_back(draw.integer(r.arc_flow_cost));
    cap.push_back(draw.integer(r.arc_capacity));
  }
  std::vector<std::pair<int, int>> od;
  for (int k = 0; k < K; ++k) {
    const int o = draw.index(N);
    int t = draw.index(N - 1);
    if (t >= o) ++t;
    od.emplace_back(o, t);
  }

  // columns: unmet demand z_k, then flows f_ek at K + e*K + k
  // rows: conservation (v, k) at v*K + k, capacity e at N*K + e, linking (e, k) at N*K + E + e*K + k
  const int n2 = K + E * K;
  const int m2 = N * K + E + E * K;
  std::vector<double> cost(static_cast<std::size_t>(K), r.unmet_cost);
  for (int e = 0; e < E; ++e) {
    for (int k = 0; k < K; ++k) cost.push_back(flow_cost[static_cast<std::size_t>(e)]);
  }
  std::vector<Triplet> w;
  for (int k = 0; k < K; ++k) {
    w.push_back({od[static_cast<std::size_t>(k)].first * K + k, k, 1.0});
    w.push_back({od[static_cast<std::size_t>(k)].second * K + k, k, -1.0});
  }
  for (int e = 0; e < E; ++e) {
    const auto [from, to] = arcs[static_cast<std::size_t>(e)];
    for (int k = 0; k < K; ++k) {
      const int col = K + e * K + k;
      w.push_back({from * K + k, col, 1.0});
      w.push_back({to * K + k, col, -1.0});
      w.push_back({N * K + e, col, -1.0});
      w.push_back({N * K + E + e * K + k, col, -1.0});
    }
  }
  const SparseMatrix rec = SparseMatrix::from_triplets(m2, n2, w);
  for (int s = 0; s < p.scenarios; ++s) {
    smip::Scenario sc;
    sc.probability = 1.0 / p.scenarios;
    sc.cost = cost;
    sc.recourse = rec;
    sc.rhs.assign(static_cast<std::size_t>(m2), 0.0);
    std::vector<Triplet> t;
    for (int e = 0; e < E; ++e) t.push_back({N * K + e, e, cap[static_cast<std::size_t>(e)]});
    std::vector<double> demand;
    for (int k = 0; k < K; ++k) {
      demand.push_back(draw.integer(r.commodity_demand));
      sc.rhs[static_cast<std::size_t>(od[static_cast<std::size_t>(k)].first * K + k)] = demand.back();
      sc.rhs[static_cast<std::size_t>(od[static_cast<std::size_t>(k)].second * K + k)] = -demand.back();
    }
    for (int e = 0; e < E; ++e) {
      for (int k = 0; k < K; ++k) {
        t.push_back({N * K + E + e * K + k, e, std::min(demand[static_cast<std::size_t>(k)], cap[static_cast<std::size_t>(e)])});
      }
    }
    sc.technology = SparseMatrix::from_triplets(m2, E, std::move(t));
    inst.scenarios.push_back(std::move(sc));
  }
  return inst;
}

}  // namespace

smip::SmipInstance generate(const FamilyParams& params, const GeneratorRanges& ranges) {
  check_params(params);
  smip::SmipInstance inst =
      params.family == Family::Smcf ? network_design(params, ranges) : server_location(params, ranges);
  smip::require_valid(inst);
  return inst;
}

}  // namespace lagcut::lab
