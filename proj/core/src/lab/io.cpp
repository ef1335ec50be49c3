#include "lagcut/lab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "lagcut/error.hpp"

namespace lagcut::lab {

namespace {

using nlohmann::json;

json matrix_json(const SparseMatrix& m) {
  json trips = json::array();
  for (const auto& t : m.entries()) trips.push_back(json::array({t.row, t.col, t.value}));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"triplets", std::move(trips)}};
}

// Field access that reports the full path of whatever is missing or mistyped.
class Reader {
 public:
  Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {}

  bool has(const char* key) const { return node_.contains(key) && !node_.at(key).is_null(); }

  Reader child(const char* key) const {
    if (!node_.contains(key)) throw Error(fmt::format("missing field '{}'", where(key)));
    return {node_.at(key), where(key)};
  }
  Reader at(std::size_t i) const { return {node_.at(i), fmt::format("{}[{}]", path_, i)}; }

  std::size_t size(const char* what = "an array") const {
    if (!node_.is_array()) fail(what);
    return node_.size();
  }

  double number() const {
    if (!node_.is_number()) fail("a number");
    return node_.get<double>();
  }
  int integer() const {
    if (!node_.is_number_integer()) fail("an integer");
    return node_.get<int>();
  }
  std::string string() const {
    if (!node_.is_string()) fail("a string");
    return node_.get<std::string>();
  }
  std::vector<double> numbers() const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i).number();
    return out;
  }
  const json& raw() const { return node_; }
  const std::string& path() const { return path_; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw Error(fmt::format("field '{}' must be {}", path_, expected));
  }

 private:
  std::string where(const char* key) const { return path_.empty() ? key : path_ + "." + key; }
  const json& node_;
  std::string path_;
};

SparseMatrix read_matrix(const Reader& r, int rows, int cols) {
  if (r.has("rows")) rows = r.child("rows").integer();
  if (r.has("cols")) cols = r.child("cols").integer();
  std::vector<Triplet> entries;
  if (r.has("triplets")) {
    const Reader trips = r.child("triplets");
    for (std::size_t k = 0; k < trips.size(); ++k) {
      const Reader t = trips.at(k);
      if (t.size() != 3) t.fail("[row, col, value]");
      entries.push_back({t.at(0).integer(), t.at(1).integer(), t.at(2).number()});
    }
  }
  try {
    return SparseMatrix::from_triplets(rows, cols, std::move(entries));
  } catch (const Error& e) {
    throw Error(fmt::format("field '{}': {}", r.path(), e.what()));
  }
}

enum class RowSense { Ge, Le, Eq };

RowSense parse_sense(const Reader& r) {
  const std::string s = r.string();
  if (s == "ge" || s == ">=") return RowSense::Ge;
  if (s == "le" || s == "<=") return RowSense::Le;
  if (s == "eq" || s == "=") return RowSense::Eq;
  r.fail("one of \"ge\", \"le\", \"eq\"");
}

// Rewrites T x + W y (sense) h as >= rows only.
void normalize(smip::Scenario& sc, const std::vector<RowSense>& senses) {
  const int n1 = sc.technology.cols();
  const int n2 = sc.recourse.cols();
  std::vector<Triplet> t, w;
  std::vector<double> h;
  auto emit = [&](int i, double sign) {
    const int r = static_cast<int>(h.size());
    for (const auto& e : sc.technology.row(i)) t.push_back({r, e.col, sign * e.value});
    for (const auto& e : sc.recourse.row(i)) w.push_back({r, e.col, sign * e.value});
    h.push_back(sign * sc.rhs[static_cast<std::size_t>(i)]);
  };
  for (std::size_t i = 0; i < senses.size(); ++i) {
    const int row = static_cast<int>(i);
    switch (senses[i]) {
      case RowSense::Ge: emit(row, 1.0); break;
      case RowSense::Le: emit(row, -1.0); break;
      case RowSense::Eq: emit(row, 1.0); emit(row, -1.0); break;
    }
  }
  const int m = static_cast<int>(h.size());
  sc.technology = SparseMatrix::from_triplets(m, n1, std::move(t));
  sc.recourse = SparseMatrix::from_triplets(m, n2, std::move(w));
  sc.rhs = std::move(h);
}

smip::Scenario read_scenario(const Reader& r, int n1) {
  smip::Scenario sc;
  sc.probability = r.child("p").number();
  sc.cost = r.child("d").numbers();
  sc.rhs = r.child("h").numbers();
  const int m2 = static_cast<int>(sc.rhs.size());
  sc.technology = read_matrix(r.child("T"), m2, n1);
  sc.recourse = read_matrix(r.child("W"), m2, static_cast<int>(sc.cost.size()));
  if (r.has("senses")) {
    const Reader s = r.child("senses");
    if (static_cast<int>(s.size()) != m2) s.fail(fmt::format("an array of {} senses", m2));
    if (sc.technology.rows() != m2 || sc.recourse.rows() != m2) {
      throw Error(fmt::format("field '{}': T and W must have {} rows to match h", r.path(), m2));
    }
    std::vector<RowSense> senses;
    for (std::size_t i = 0; i < s.size(); ++i) senses.push_back(parse_sense(s.at(i)));
    normalize(sc, senses);
  }
  return sc;
}

}  // namespace

std::string to_json(const smip::SmipInstance& inst) {
  json j;
  j["name"] = inst.name;
  j["n1"] = inst.num_first;
  j["p1"] = inst.num_integer;
  if (inst.num_integer_recourse != 0) j["p2"] = inst.num_integer_recourse;
  j["c"] = inst.cost;
  bool finite = false;
  json ub = json::array();
  for (double u : inst.upper) {
    finite = finite || std::isfinite(u);
    ub.push_back(std::isfinite(u) ? json(u) : json(nullptr));
  }
  if (finite) j["x_ub"] = std::move(ub);
  j["A"] = matrix_json(inst.first_stage);
  j["b"] = inst.first_rhs;
  json scenarios = json::array();
  for (const auto& sc : inst.scenarios) {
    scenarios.push_back({{"p", sc.probability},
                         {"d", sc.cost},
                         {"T", matrix_json(sc.technology)},
                         {"W", matrix_json(sc.recourse)},
                         {"h", sc.rhs}});
  }
  j["scenarios"] = std::move(scenarios);
  return j.dump(1);
}

smip::SmipInstance from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line:column
    int line = 1;
    int col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(fmt::format("JSON parse error at line {}, column {}: {}", line, col, e.what()));
  }
  if (!doc.is_object()) throw Error("instance document must be a JSON object");
  const Reader root(doc, "");
  smip::SmipInstance inst;
  try {
    if (root.has("name")) inst.name = root.child("name").string();
    inst.num_first = root.child("n1").integer();
    inst.num_integer = root.has("p1") ? root.child("p1").integer() : 0;
    inst.num_integer_recourse = root.has("p2") ? root.child("p2").integer() : 0;
    inst.cost = root.child("c").numbers();
    inst.upper.assign(static_cast<std::size_t>(std::max(inst.num_first, 0)), milp::kInf);
    if (root.has("x_ub")) {
      const Reader ub = root.child("x_ub");
      if (static_cast<int>(ub.size()) != inst.num_first) ub.fail(fmt::format("an array of length n1={}", inst.num_first));
      for (std::size_t i = 0; i < ub.size(); ++i) {
        if (!ub.raw().at(i).is_null()) inst.upper[i] = ub.at(i).number();
      }
    }
    inst.first_rhs = root.has("b") ? root.child("b").numbers() : std::vector<double>{};
    inst.first_stage = root.has("A") ? read_matrix(root.child("A"), static_cast<int>(inst.first_rhs.size()), inst.num_first)
                                     : SparseMatrix(static_cast<int>(inst.first_rhs.size()), inst.num_first);
    const Reader scenarios = root.child("scenarios");
    for (std::size_t s = 0; s < scenarios.size(); ++s) {
      inst.scenarios.push_back(read_scenario(scenarios.at(s), inst.num_first));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed instance: ") + e.what());
  }
  return inst;
}

void save(const smip::SmipInstance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write instance file " + path);
  out << to_json(inst) << '\n';
}

smip::SmipInstance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open instance file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return from_json(buf.str());
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace lagcut::lab
