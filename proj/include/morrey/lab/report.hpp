#pragma once

#include <deque>
#include <filesystem>
#include <string>
#include <vector>

#include "morrey/maximal.hpp"
#include "morrey/muckenhoupt.hpp"
#include "morrey/serialize.hpp"

namespace morrey::lab {

inline constexpr const char* kSchemaVersion = "morrey-lab/report-v1";

/// One pass/fail comparison: measured (relation) bound, with relative
/// tolerance. Advisory checks are reported but do not decide the exit code.
struct Check {
  std::string name;
  double measured = 0.0;
  std::string relation;  // "<=", ">=", "=="
  double bound = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool advisory = false;
  std::string note;
};

Check check_le(std::string name, double measured, double bound, double rel_tol, std::string note = {});
Check check_ge(std::string name, double measured, double bound, double rel_tol, std::string note = {});
/// |measured - bound| <= tol * max(|bound|, floor); tol is relative unless bound is 0.
Check check_eq(std::string name, double measured, double bound, double rel_tol, std::string note = {});
Check check_flag(std::string name, bool ok, std::string note = {});

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;

  void add(std::vector<Json> row);
};

class Report {
 public:
  explicit Report(std::string experiment);

  const std::string& experiment() const { return experiment_; }
  Json& parameters() { return parameters_; }
  Json& quantities() { return quantities_; }
  const Json& parameters() const { return parameters_; }
  const Json& quantities() const { return quantities_; }

  Check& add(Check c);
  const std::vector<Check>& checks() const { return checks_; }
  /// All non-advisory checks passed.
  bool passed() const;
  std::size_t failures() const;

  Table& table(const std::string& name, std::vector<std::string> columns);
  const std::deque<Table>& tables() const { return tables_; }

  void set_runtime(double seconds) { runtime_ = seconds; }

  Json to_json() const;

 private:
  std::string experiment_;
  Json parameters_ = Json::object();
  Json quantities_ = Json::object();
  std::vector<Check> checks_;
  std::deque<Table> tables_;
  double runtime_ = -1.0;
};

/// %.17g; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double v);
/// Numbers as JSON; non-finite values become strings.
Json number(double v);

std::string to_csv(const Table& t);
/// Writes <dir>/<stem>.json and <dir>/<stem>_<table>.csv; returns the paths.
std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir,
                                                const std::string& stem);

Json encode(const GridSpec& g);
Json encode(const NormResult& r);
Json encode(const ApReport& r);
Json encode(const AxEstimate& r);
Json encode(const OperatorNormEstimate& r);
Json encode(const MorreyParams& p);

}  // namespace morrey::lab
