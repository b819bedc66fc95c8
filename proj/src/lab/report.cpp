#include "morrey/lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "morrey/error.hpp"

namespace morrey::lab {

namespace {

Check make(std::string name, double measured, std::string rel, double bound, double tol, bool ok,
           std::string note) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.relation = std::move(rel);
  c.bound = bound;
  c.tolerance = tol;
  c.passed = ok;
  c.note = std::move(note);
  return c;
}

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format_number(v.get<double>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

Check check_le(std::string name, double measured, double bound, double rel_tol, std::string note) {
  const bool ok = measured <= bound + rel_tol * std::fabs(bound);
  return make(std::move(name), measured, "<=", bound, rel_tol, ok, std::move(note));
}

Check check_ge(std::string name, double measured, double bound, double rel_tol, std::string note) {
  const bool ok = measured >= bound - rel_tol * std::fabs(bound);
  return make(std::move(name), measured, ">=", bound, rel_tol, ok, std::move(note));
}

Check check_eq(std::string name, double measured, double bound, double rel_tol, std::string note) {
  const double scale = bound == 0.0 ? 1.0 : std::fabs(bound);
  const bool ok = std::fabs(measured - bound) <= rel_tol * scale;
  return make(std::move(name), measured, "==", bound, rel_tol, ok, std::move(note));
}

Check check_flag(std::string name, bool ok, std::string note) {
  return make(std::move(name), ok ? 1.0 : 0.0, "==", 1.0, 0.0, ok, std::move(note));
}

void Table::add(std::vector<Json> row) {
  if (row.size() != columns.size()) throw Error("table '" + name + "' row has the wrong width");
  rows.push_back(std::move(row));
}

Report::Report(std::string experiment) : experiment_(std::move(experiment)) {}

Check& Report::add(Check c) {
  checks_.push_back(std::move(c));
  return checks_.back();
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t k = 0;
  for (const auto& c : checks_) k += (!c.passed && !c.advisory);
  return k;
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
  for (auto& t : tables_)
    if (t.name == name) return t;
  tables_.push_back(Table{name, std::move(columns), {}});
  return tables_.back();
}

Json Report::to_json() const {
  Json j;
  j["schema"] = kSchemaVersion;
  j["experiment"] = experiment_;
  j["parameters"] = parameters_;
  j["quantities"] = quantities_;
  Json checks = Json::array();
  for (const auto& c : checks_) {
    Json cj{{"name", c.name},          {"measured", number(c.measured)}, {"relation", c.relation},
            {"bound", number(c.bound)}, {"tolerance", c.tolerance},       {"passed", c.passed}};
    if (c.advisory) cj["advisory"] = true;
    if (!c.note.empty()) cj["note"] = c.note;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  Json tables = Json::array();
  for (const auto& t : tables_) tables.push_back(Json{{"name", t.name}, {"rows", t.rows.size()}});
  j["tables"] = tables;
  j["passed"] = passed();
  if (runtime_ >= 0.0) j["runtime_seconds"] = runtime_;
  return j;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(format_number(v)); }

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
    out += '\n';
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir,
                                                const std::string& stem) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> paths;
  auto put = [&](const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << text;
    paths.push_back(p);
  };
  put(dir / (stem + ".json"), r.to_json().dump(2) + "\n");
  for (const auto& t : r.tables()) put(dir / (stem + "_" + t.name + ".csv"), to_csv(t));
  return paths;
}

Json encode(const GridSpec& g) {
  Json cells = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) cells.push_back(g.cells(i));
  return Json{{"n", g.dim()}, {"corner", morrey::encode(g.corner())}, {"cells", cells}, {"h", g.step()}};
}

Json encode(const NormResult& r) {
  return Json{{"value", number(r.value)}, {"argmax", morrey::encode(r.argmax)}, {"cubes_examined", r.cubes_examined}};
}

Json encode(const ApReport& r) {
  return Json{{"value", number(r.value)}, {"argmax", morrey::encode(r.argmax)}, {"cubes_examined", r.cubes_examined}};
}

Json encode(const AxEstimate& r) {
  return Json{{"value", number(r.value)},
              {"argmax", morrey::encode(r.argmax)},
              {"argmax_function", r.argmax_label},
              {"ratios_evaluated", r.ratios_evaluated},
              {"skipped_zero_denominators", r.skipped},
              {"kind", "lower bound"}};
}

Json encode(const OperatorNormEstimate& r) {
  return Json{{"value", number(r.value)},
              {"argmax_function", r.argmax_label},
              {"evaluated", r.evaluated},
              {"skipped_zero_norm", r.skipped},
              {"kind", "lower bound"}};
}

Json encode(const MorreyParams& p) { return Json{{"p", p.p}, {"lambda", p.lambda}}; }

}  // namespace morrey::lab
