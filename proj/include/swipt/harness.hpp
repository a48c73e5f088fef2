#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/beamforming.hpp"

namespace swipt {

// One aggregated measurement: a metric of one method at one sweep point.
struct ResultRow {
  std::string scenario;
  double sweep_value = 0.0;
  std::string method;  // series label, may carry variant tags like [M=32]
  std::string metric;
  double mean = 0.0;
  double stderr_ = 0.0;  // standard error of the mean
  int n_trials = 0;      // samples behind this row
  uint64_t seed = 0;     // base seed of the run
};

struct ResultTable {
  std::vector<ResultRow> rows;
};

struct RunOptions {
  uint64_t seed = 1;
  int trials = -1;     // negative keeps the scenario default
  double tol = 1e-8;   // SDP gap target for solver-backed methods
  int n_symbols = -1;  // negative keeps the scenario default
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

std::vector<ScenarioInfo> list_scenarios();
bool is_scenario(const std::string& name);

// Runs a named study. Trials use per-trial seeds derived from the base seed
// by a splittable counter, so the same (name, options) pair reproduces the
// identical table; infeasible trials are counted in dedicated rows rather
// than dropped.
ResultTable run_scenario(const std::string& name, const RunOptions& opts);

struct Summary {
  double mean = 0.0;
  double stderr_ = 0.0;
  int n = 0;
};
Summary summarize(const std::vector<double>& values);

// Human-readable lines, one per row, ordered by (scenario, sweep, method,
// metric). With to_db set, mean values are converted watts → dBm; zero maps
// to the "-inf" sentinel.
std::vector<std::string> summarize(const ResultTable& table, bool to_db);

// CSV: fixed header, one metric per row. Identical tables serialize to
// identical bytes.
void write_csv(const ResultTable& table, std::ostream& os);

// Plot-friendly long format: x, series, y, y_stderr; series combines method
// and metric. Rows are ordered by series then x.
void write_plotdata(const ResultTable& table, std::ostream& os);

// Number formatting shared by the writers: shortest round-trip style with
// "-inf" for negative infinity.
std::string format_number(double v);

}  // namespace swipt
