#include "lagcut/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "lagcut/averaged/averaged.hpp"

namespace lagcut::bench {

namespace {

namespace fs = std::filesystem;

using Table = std::vector<std::vector<std::string>>;

std::string csv(const Table& t) {
  std::string out;
  for (const auto& row : t) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool quote = row[i].find_first_of(",\"") != std::string::npos;
      out += (i ? "," : "") + (quote ? "\"" + row[i] + "\"" : row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string aligned(const Table& t) {
  std::vector<std::size_t> width;
  for (const auto& row : t) {
    width.resize(std::max(width.size(), row.size()));
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::string line;
    for (std::size_t i = 0; i < t[r].size(); ++i) {
      line += i == 0 ? fmt::format("{:<{}}", t[r][i], width[i]) : fmt::format("  {:>{}}", t[r][i], width[i]);
    }
    out += line + '\n';
    if (r == 0) {
      std::size_t total = 0;
      for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
      out += std::string(total, '-') + '\n';
    }
  }
  return out;
}

std::string mean_or_dash(const std::vector<double>& v, const char* format) {
  if (v.empty()) return "-";
  double sum = 0.0;
  for (double x : v) sum += x;
  return fmt::format(fmt::runtime(format), sum / static_cast<double>(v.size()));
}

template <class Key>
std::vector<Key> first_seen(const std::vector<RunRecord>& runs, Key (*key)(const RunRecord&)) {
  std::vector<Key> out;
  for (const auto& r : runs) {
    if (std::find(out.begin(), out.end(), key(r)) == out.end()) out.push_back(key(r));
  }
  return out;
}

std::pair<std::string, std::string> family_method(const RunRecord& r) { return {r.family, r.method}; }

Table summary_table(const ExperimentResult& res) {
  Table t;
  std::vector<std::string> header{"family", "method", "runs"};
  header.insert(header.end(), kSummaryColumns.begin(), kSummaryColumns.end());
  header.emplace_back("crashed");
  t.push_back(header);
  for (const auto& [family, method] : first_seen(res.runs, &family_method)) {
    int runs = 0;
    int solved = 0;
    int crashed = 0;
    std::vector<double> soln_time, gap, bc_time, nodes;
    for (const auto& r : res.runs) {
      if (r.family != family || r.method != method) continue;
      ++runs;
      if (r.crashed()) {
        ++crashed;
        continue;
      }
      if (!r.bc_ran) continue;
      bc_time.push_back(r.bc.time);
      nodes.push_back(static_cast<double>(r.bc.nodes));
      if (r.bc.solved) {
        ++solved;
        soln_time.push_back(r.cut_time + r.bc.time);
      } else if (std::isfinite(r.bc.gap_percent)) {
        gap.push_back(r.bc.gap_percent);
      }
    }
    t.push_back({family, method, std::to_string(runs), std::to_string(solved), mean_or_dash(soln_time, "{:.2f}"),
                 mean_or_dash(gap, "{:.2f}"), mean_or_dash(bc_time, "{:.2f}"), mean_or_dash(nodes, "{:.1f}"),
                 std::to_string(crashed)});
  }
  return t;
}

std::vector<averaged::StatsRow> stats_rows(const ExperimentResult& res) {
  std::vector<std::pair<std::string, double>> keys;
  for (const auto& r : res.runs) {
    if (r.strength.empty()) continue;
    const std::pair<std::string, double> k{r.family, r.beta};
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  }
  std::vector<std::string> families;
  for (const auto& k : keys) {
    if (std::find(families.begin(), families.end(), k.first) == families.end()) families.push_back(k.first);
  }
  auto rank = [&](const std::string& f) { return std::find(families.begin(), families.end(), f) - families.begin(); };
  std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
    return std::pair(rank(a.first), a.second) < std::pair(rank(b.first), b.second);
  });
  std::vector<averaged::StatsRow> rows;
  for (const auto& [family, beta] : keys) {
    std::vector<averaged::StrengthRecord> all;
    double delta = 0.0;
    for (const auto& r : res.runs) {
      if (r.family != family || r.beta != beta) continue;
      all.insert(all.end(), r.strength.begin(), r.strength.end());
      delta = std::max(delta, r.delta);
    }
    rows.push_back({family, beta, averaged::quality_stats(all, delta)});
  }
  return rows;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_') {
      out += c;
    } else if (c == '(' || c == ' ' || c == '/' || c == ',') {
      out += '_';
    }
  }
  return out;
}

std::string profile_data(const std::vector<ProfilePoint>& points) {
  std::string out = "# tau rho\n";
  for (const auto& p : points) out += fmt::format("{:.6f} {:.6f}\n", p.tau, p.rho);
  return out;
}

std::string profile_svg(const std::map<std::string, std::vector<ProfilePoint>>& curves, double gamma) {
  const double w = 640, h = 400, left = 60, right = 180, top = 30, bottom = 50;
  double tmax = 0.0;
  for (const auto& [m, pts] : curves) {
    for (const auto& p : pts) tmax = std::max(tmax, p.tau);
  }
  tmax = tmax > 0.0 ? tmax * 1.05 : 1.0;
  auto X = [&](double t) { return left + (w - left - right) * t / tmax; };
  auto Y = [&](double r) { return top + (h - top - bottom) * (1.0 - r); };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      w, h);
  out += fmt::format("<text x=\"{}\" y=\"18\">gamma = {:g}</text>\n", left, gamma);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", left, Y(0), X(tmax));
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", left, Y(0), Y(1));
  for (int k = 0; k <= 4; ++k) {
    const double r = k / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n", left - 6, Y(r) + 4, r);
    const double t = tmax * k / 4.0;
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:.3g}</text>\n", X(t), Y(0) + 18, t);
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">tau</text>\n", X(tmax / 2), h - 8);
  std::size_t k = 0;
  for (const auto& [method, pts] : curves) {
    const char* color = kPalette[k % std::size(kPalette)];
    std::string path;
    double last = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i > 0) path += fmt::format(" {:.2f},{:.2f}", X(pts[i].tau), Y(last));
      path += fmt::format(" {:.2f},{:.2f}", X(pts[i].tau), Y(pts[i].rho));
      last = pts[i].rho;
    }
    path += fmt::format(" {:.2f},{:.2f}", X(tmax), Y(last));
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n", color, path.substr(1));
    const double ly = top + 16.0 * static_cast<double>(k);
    out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"{3}\" stroke-width=\"2\"/>\n",
                       w - right + 10, ly, w - right + 30, color);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", w - right + 36, ly + 4, method);
    ++k;
  }
  out += "</svg>\n";
  return out;
}

std::vector<std::string> emit_report(const ExperimentResult& results, const std::string& dir) {
  if (results.runs.empty()) throw Error("no results to report");

  std::vector<std::pair<std::string, std::string>> files;
  const Table summary = summary_table(results);
  files.emplace_back("summary.csv", csv(summary));
  files.emplace_back("summary.txt", aligned(summary));

  std::vector<ProfileInput> inputs;
  for (const auto& r : results.runs) inputs.push_back({r.instance, r.method, r.trajectory});
  for (double gamma : results.gammas) {
    const auto curves = gap_closed_profile(inputs, gamma);
    const std::string sub = fmt::format("profiles/gamma_{:g}/", gamma);
    for (const auto& [method, pts] : curves) files.emplace_back(sub + slug(method) + ".dat", profile_data(pts));
    if (results.svg) files.emplace_back(sub + "profile.svg", profile_svg(curves, gamma));
  }

  const auto rows = stats_rows(results);
  std::ostringstream stats;
  averaged::write_stats_csv(rows, stats);
  files.emplace_back("stats.csv", stats.str());
  Table st{{"family", "beta", "% positive", "avg ratio (%)", "records", "skipped"}};
  for (const auto& r : rows) {
    st.push_back({r.family, fmt::format("{:g}", r.beta), fmt::format("{:.2f}", r.stats.pct_positive),
                  fmt::format("{:.2f}", r.stats.avg_ratio), std::to_string(r.stats.n_records),
                  std::to_string(r.stats.n_skipped)});
  }
  files.emplace_back("stats.txt", aligned(st));

  std::vector<std::string> written;
  const fs::path root(dir);
  for (const auto& [name, text] : files) {
    const fs::path path = root / name;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write report file " + path.string());
    out << text;
    written.push_back(path.string());
  }
  return written;
}

}  // namespace lagcut::bench
