#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "isogauge/config.hpp"
#include "isogauge/report.hpp"

namespace isogauge {

struct ReportRow {
  std::string family;
  std::string parameters;  // compact JSON of the family input
  InequalityReport report;
};

/// One functional at one ladder resolution. `difference` is |v_n - v_prev|
/// (NaN on the first rung) and `ratio` the previous difference over this one.
struct ConvergenceRow {
  std::string family;
  std::string check;
  std::string functional;
  std::size_t resolution = 0;
  double value = 0.0;
  double difference = 0.0;
  double ratio = 0.0;
  bool decayed = true;  // this difference met the decay rule
};

struct SearchTrace {
  std::string family;
  std::vector<double> incumbent;
};

struct RunResult {
  Command command = Command::Plane;
  std::vector<ReportRow> rows;
  std::vector<ConvergenceRow> convergence;
  std::vector<SearchTrace> traces;
  std::vector<std::string> failures;  // one line per failed row or series

  bool passed() const noexcept { return failures.empty(); }
  int exit_code() const noexcept { return passed() ? 0 : 2; }
};

/// Runs every family. Rows are computed on up to `jobs` workers and returned
/// in input order. Input errors throw ValidationError (or ConfigError).
RunResult execute(const RunConfig& config, unsigned jobs = 1);

/// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double v);

std::string report_csv(const RunResult& result);
std::string report_json(const RunResult& result);
std::string convergence_csv(const RunResult& result);
std::string trace_csv(const RunResult& result);

}  // namespace isogauge
