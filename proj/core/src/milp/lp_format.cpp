#include "lagcut/milp/lp_format.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace lagcut::milp {
namespace {

std::string var_name(const MilpModel& model, int j) {
  const auto& name = model.names()[static_cast<std::size_t>(j)];
  return name.empty() ? fmt::format("x{}", j) : name;
}

void write_linear(std::ostream& out, const MilpModel& model, const std::vector<Term>& terms) {
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0.0) continue;
    const char sign = t.coef < 0 ? '-' : '+';
    if (first) {
      out << (t.coef < 0 ? "- " : "");
    } else {
      out << ' ' << sign << ' ';
    }
    out << fmt::format("{:.17g} {}", std::abs(t.coef), var_name(model, t.var));
    first = false;
  }
  if (first) out << "0 " << (model.num_vars() > 0 ? var_name(model, 0) : std::string("x0"));
}

}  // namespace

void write_lp_format(const MilpModel& model, std::ostream& out) {
  out << "\\ generated by lagcut\n";
  out << "Minimize\n obj: ";
  std::vector<Term> obj;
  for (int j = 0; j < model.num_vars(); ++j) obj.push_back({j, model.objective()[static_cast<std::size_t>(j)]});
  write_linear(out, model, obj);
  if (model.objective_offset() != 0.0) {
    out << fmt::format(" + {:.17g}", model.objective_offset());
  }
  out << "\nSubject To\n";
  for (int i = 0; i < model.num_rows(); ++i) {
    const Row& row = model.rows()[static_cast<std::size_t>(i)];
    out << ' ' << (row.name.empty() ? fmt::format("r{}", i) : row.name) << ": ";
    write_linear(out, model, row.terms);
    out << (row.sense == Sense::Equal ? " = " : " >= ") << fmt::format("{:.17g}", row.rhs) << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const double lo = model.lower()[static_cast<std::size_t>(j)];
    const double hi = model.upper()[static_cast<std::size_t>(j)];
    const std::string name = var_name(model, j);
    if (std::isinf(lo) && std::isinf(hi)) {
      out << ' ' << name << " free\n";
    } else if (std::isinf(hi)) {
      out << fmt::format(" {} >= {:.17g}\n", name, lo);
    } else if (std::isinf(lo)) {
      out << fmt::format(" -inf <= {} <= {:.17g}\n", name, hi);
    } else {
      out << fmt::format(" {:.17g} <= {} <= {:.17g}\n", lo, name, hi);
    }
  }
  bool any_int = false;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.integer()[static_cast<std::size_t>(j)]) continue;
    if (!any_int) out << "General\n";
    any_int = true;
    out << ' ' << var_name(model, j) << '\n';
  }
  out << "End\n";
}

std::string to_lp_format(const MilpModel& model) {
  std::ostringstream os;
  write_lp_format(model, os);
  return os.str();
}

}  // namespace lagcut::milp
