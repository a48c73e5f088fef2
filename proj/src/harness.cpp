#include "swipt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>

#include "swipt/rng.hpp"

namespace swipt {

namespace {

// Accumulates per-cell samples and turns them into rows.
class Collector {
 public:
  Collector(std::string scenario, uint64_t seed)
      : scenario_(std::move(scenario)), seed_(seed) {}

  void add(double sweep, const std::string& series, const std::string& metric,
           double value) {
    samples_[Key{sweep, series, metric}].push_back(value);
  }

  void count_infeasible(double sweep, const std::string& series, int total) {
    totals_[Key{sweep, series, "infeasible_trials"}] = total;
  }

  ResultTable table() const {
    ResultTable t;
    for (const auto& [key, vals] : samples_) {
      const Summary s = summarize(vals);
      t.rows.push_back(ResultRow{scenario_, key.sweep, key.series, key.metric,
                                 s.mean, s.stderr_, s.n, seed_});
    }
    for (const auto& [key, total] : totals_) {
      // Count of infeasible draws out of `total` at this cell.
      const auto it = infeasible_.find(key);
      const double count = it == infeasible_.end() ? 0.0 : double(it->second);
      t.rows.push_back(ResultRow{scenario_, key.sweep, key.series, key.metric,
                                 count, 0.0, total, seed_});
    }
    return t;
  }

  void note_infeasible(double sweep, const std::string& series) {
    ++infeasible_[Key{sweep, series, "infeasible_trials"}];
  }

 private:
  struct Key {
    double sweep;
    std::string series;
    std::string metric;
    bool operator<(const Key& o) const {
      if (sweep != o.sweep) return sweep < o.sweep;
      if (series != o.series) return series < o.series;
      return metric < o.metric;
    }
  };
  std::string scenario_;
  uint64_t seed_;
  std::map<Key, std::vector<double>> samples_;
  std::map<Key, int> totals_;
  std::map<Key, int> infeasible_;
};

SolveOptions solver_opts(const RunOptions& run) {
  SolveOptions o;
  o.tol = run.tol;
  return o;
}

SystemConfig default_config() { return SystemConfig{}; }

int pick_trials(const RunOptions& run, int fallback) {
  return run.trials > 0 ? run.trials : fallback;
}

int pick_symbols(const RunOptions& run, int fallback) {
  return run.n_symbols > 0 ? run.n_symbols : fallback;
}

std::string tag(const std::string& base, const std::string& extra) {
  return base + "[" + extra + "]";
}

// ---- Scenario implementations -------------------------------------------

// Worst-case capacity and received RF power over the rank-cut grid. The
// energy-block weight is fixed at one, so surplus power moves into the
// dedicated block only when the leaky bases make that profitable.
ResultTable rank_sweep(const RunOptions& run) {
  Collector col("fig4_fig5_rank_sweep", run.seed);
  SystemConfig cfg = default_config();
  cfg.K_I = 4;
  cfg.K_E = 4;
  const int trials = pick_trials(run, 30);
  for (int r_I : {1, 2, 3, 4, 5}) {
    for (int r_E = 1; r_E <= 6; ++r_E) {
      const std::string series = tag("nullspace-sdr-eb", "r_I=" + std::to_string(r_I));
      for (int tr = 0; tr < trials; ++tr) {
        const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        SolveOptions so = solver_opts(run);
        so.r_I = r_I;
        so.r_E = r_E;
        so.eta = 1.0;
        const auto sol = solve_nullspace_sdr_eb(ch, cfg, so);
        if (!sol.feasible) {
          col.note_infeasible(r_E, series);
          continue;
        }
        EvalOptions eo;
        eo.with_dc = false;
        const auto rep = evaluate(ch, sol, cfg, eo);
        col.add(r_E, series, "worst_capacity", rep.worst_capacity);
        col.add(r_E, series, "total_rf", rep.total_rf);
        col.add(r_E, series, "qos_met", rep.qos_met ? 1.0 : 0.0);
        col.add(r_E, series, "energy_block_trace", sol.trace_energy_block);
      }
      col.count_infeasible(r_E, series, trials);
    }
  }
  return col.table();
}

// Received RF power against the capacity requirement, scattered against
// line-of-sight channels and two budget levels.
ResultTable qos_sweep(const RunOptions& run) {
  Collector col("fig5_qos_sweep", run.seed);
  const int trials = pick_trials(run, 100);
  for (double P : {2.0, 8.0}) {
    for (double kap : {0.0, kKappaPureLos}) {
      SystemConfig cfg = default_config();
      cfg.P_max = P;
      cfg.kappa_default = kap;
      const std::string series =
          tag("nullspace-sdr", std::string("kappa=") +
                                   (std::isinf(kap) ? "inf" : "0") +
                                   ",P=" + format_number(P));
      for (double C : {2.0, 4.0, 6.0, 8.0, 10.0, 12.0}) {
        cfg.C_thre = C;
        for (int tr = 0; tr < trials; ++tr) {
          const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
          const ChannelSet ch = generate_channels(cfg, s);
          const auto sol = solve_nullspace_sdr(ch, cfg, solver_opts(run));
          if (!sol.feasible) {
            col.note_infeasible(C, series);
            continue;
          }
          EvalOptions eo;
          eo.with_dc = false;
          const auto rep = evaluate(ch, sol, cfg, eo);
          col.add(C, series, "total_rf", rep.total_rf);
          col.add(C, series, "worst_capacity", rep.worst_capacity);
        }
        col.count_infeasible(C, series, trials);
      }
    }
  }
  return col.table();
}

// Imperfect channel knowledge: design on the corrupted channel, evaluate on
// the true one. The same noise realization serves every error weight, so the
// sweep is smooth in rho.
ResultTable csi_sweep(const RunOptions& run) {
  Collector col("fig6_csi_error", run.seed);
  const int trials = pick_trials(run, 200);
  for (double P : {2.0, 8.0}) {
    SystemConfig cfg = default_config();
    cfg.P_max = P;
    const std::string series = tag("nullspace-sdr", "P=" + format_number(P));
    for (double rho : {0.0, 0.05, 0.1, 0.2}) {
      for (int tr = 0; tr < trials; ++tr) {
        const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        CsiErrorSpec err;
        err.rho = rho;
        const ChannelSet est = corrupt_csi(ch, err, Rng::derive(s, 777));
        const auto sol = solve_nullspace_sdr(est, cfg, solver_opts(run));
        if (!sol.feasible) {
          col.note_infeasible(rho, series);
          continue;
        }
        EvalOptions eo;
        eo.with_dc = false;
        const auto rep = evaluate(ch, sol, cfg, eo);
        col.add(rho, series, "worst_capacity", rep.worst_capacity);
        col.add(rho, series, "total_rf", rep.total_rf);
      }
      col.count_infeasible(rho, series, trials);
    }
  }
  return col.table();
}

// Null-space designs against the full-space SDP across array sizes.
ResultTable benchmark_sweep(const RunOptions& run) {
  Collector col("fig7_benchmark_power", run.seed);
  const int trials = pick_trials(run, 50);
  const std::vector<Method> methods = {Method::kNullspaceSdr,
                                       Method::kNullspaceSdrEnergyBeam,
                                       Method::kFullSdr};
  for (int M : {8, 16, 32}) {
    SystemConfig cfg = default_config();
    cfg.M = M;
    for (Method m : methods) {
      const std::string series = tag(method_name(m), "M=" + std::to_string(M));
      for (double P : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        cfg.P_max = P;
        for (int tr = 0; tr < trials; ++tr) {
          const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
          const ChannelSet ch = generate_channels(cfg, s);
          const auto sol = solve_by_method(m, ch, cfg, solver_opts(run));
          if (!sol.feasible) {
            col.note_infeasible(P, series);
            continue;
          }
          EvalOptions eo;
          eo.with_dc = false;
          const auto rep = evaluate(ch, sol, cfg, eo);
          col.add(P, series, "total_rf", rep.total_rf);
          col.add(P, series, "total_rf_dbm", watts_to_dbm(rep.total_rf));
        }
        col.count_infeasible(P, series, trials);
      }
    }
  }
  return col.table();
}

// Deterministic rectifier curve: DC output and conversion efficiency.
ResultTable eh_curve(const RunOptions& run) {
  Collector col("fig8_eh_efficiency", run.seed);
  const SystemConfig cfg = default_config();
  for (int e = 0; e <= 8; ++e) {
    const double P = 1e-3 * std::pow(10.0, 0.25 * e);  // 1 mW .. 100 mW
    col.add(P, "transfer-curve", "dc_power", eh_transfer(P, cfg.eh));
    col.add(P, "transfer-curve", "efficiency", rf_dc_efficiency(P, cfg.eh));
  }
  return col.table();
}

// Harvested DC with Gaussian symbols on the no-energy-beam design against
// the deterministic sinusoid on the closed-form design.
ResultTable waveform_sweep(const RunOptions& run) {
  Collector col("fig9_waveform", run.seed);
  const int trials = pick_trials(run, 40);
  const int n_symbols = pick_symbols(run, 4000);
  for (int M : {16, 32}) {
    SystemConfig cfg = default_config();
    cfg.M = M;
    for (double P : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 96.0}) {
      cfg.P_max = P;
      const std::string g_series = tag("gaussian", "M=" + std::to_string(M));
      const std::string d_series = tag("sinusoid", "M=" + std::to_string(M));
      for (int tr = 0; tr < trials; ++tr) {
        const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        const auto gw = solve_nullspace_sdr(ch, cfg, solver_opts(run));
        const auto dsw = solve_closed_form(ch, cfg, solver_opts(run));
        if (!gw.feasible || !dsw.feasible) {
          col.note_infeasible(P, g_series);
          col.note_infeasible(P, d_series);
          continue;
        }
        EvalOptions eo;
        eo.n_symbols = n_symbols;
        eo.seed = s;
        const auto rg = evaluate(ch, gw, cfg, eo);
        const auto rd = evaluate(ch, dsw, cfg, eo);
        col.add(P, g_series, "total_dc", rg.total_dc);
        col.add(P, d_series, "total_dc", rd.total_dc);
        col.add(P, g_series, "total_rf", rg.total_rf);
        col.add(P, d_series, "total_rf", rd.total_rf);
      }
      col.count_infeasible(P, g_series, trials);
      col.count_infeasible(P, d_series, trials);
    }
  }
  return col.table();
}

// Energy-to-information transmit power ratio of the closed-form design.
ResultTable power_ratio(const RunOptions& run) {
  Collector col("tab4_power_ratio", run.seed);
  const int trials = pick_trials(run, 500);
  for (int K : {2, 4}) {
    for (int M : {16, 32}) {
      SystemConfig cfg = default_config();
      cfg.M = M;
      cfg.K_I = K;
      cfg.K_E = K;
      const std::string series =
          tag("closed-form", "K=" + std::to_string(K) + ",M=" + std::to_string(M));
      for (int P = 1; P <= 10; ++P) {
        cfg.P_max = double(P);
        for (int tr = 0; tr < trials; ++tr) {
          const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
          const ChannelSet ch = generate_channels(cfg, s);
          const auto sol = solve_closed_form(ch, cfg, solver_opts(run));
          if (!sol.feasible) {
            col.note_infeasible(P, series);
            continue;
          }
          const double p_i = sol.P_I.sum();
          if (p_i > 0.0 && sol.P_E > 0.0)
            col.add(P, series, "wet_wit_ratio_db",
                    10.0 * std::log10(sol.P_E / p_i));
        }
        col.count_infeasible(P, series, trials);
      }
    }
  }
  return col.table();
}

// Received RF power as the user population grows.
ResultTable user_sweep(const RunOptions& run) {
  Collector col("fig10_user_sweep", run.seed);
  const int trials = pick_trials(run, 50);
  for (Method m : {Method::kNullspaceSdr, Method::kClosedForm}) {
    for (int K : {1, 2, 3, 4, 6}) {
      SystemConfig cfg = default_config();
      cfg.K_I = K;
      cfg.K_E = K;
      const std::string series = std::string(method_name(m));
      for (int tr = 0; tr < trials; ++tr) {
        const uint64_t s = Rng::derive(run.seed, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        const auto sol = solve_by_method(m, ch, cfg, solver_opts(run));
        if (!sol.feasible) {
          col.note_infeasible(K, series);
          continue;
        }
        EvalOptions eo;
        eo.with_dc = false;
        const auto rep = evaluate(ch, sol, cfg, eo);
        col.add(K, series, "total_rf", rep.total_rf);
      }
      col.count_infeasible(K, series, trials);
    }
  }
  return col.table();
}

using ScenarioFn = std::function<ResultTable(const RunOptions&)>;

struct ScenarioEntry {
  std::string description;
  ScenarioFn fn;
};

const std::map<std::string, ScenarioEntry>& registry() {
  static const std::map<std::string, ScenarioEntry> reg = {
      {"fig4_fig5_rank_sweep",
       {"worst-case capacity and received RF power over the rank-cut grid",
        rank_sweep}},
      {"fig5_qos_sweep",
       {"received RF power against the capacity requirement, Rayleigh and "
        "line-of-sight",
        qos_sweep}},
      {"fig6_csi_error",
       {"performance degradation under imperfect channel knowledge",
        csi_sweep}},
      {"fig7_benchmark_power",
       {"null-space designs against the full-space SDP across array sizes",
        benchmark_sweep}},
      {"fig8_eh_efficiency",
       {"rectifier DC output and conversion efficiency curve", eh_curve}},
      {"fig9_waveform",
       {"harvested DC power, Gaussian symbols against the deterministic "
        "sinusoid",
        waveform_sweep}},
      {"tab4_power_ratio",
       {"energy-to-information transmit power ratio of the closed-form design",
        power_ratio}},
      {"fig10_user_sweep",
       {"received RF power as the user population grows", user_sweep}},
  };
  return reg;
}

}  // namespace

std::vector<ScenarioInfo> list_scenarios() {
  std::vector<ScenarioInfo> out;
  for (const auto& [name, entry] : registry())
    out.push_back(ScenarioInfo{name, entry.description});
  return out;
}

bool is_scenario(const std::string& name) { return registry().count(name) > 0; }

ResultTable run_scenario(const std::string& name, const RunOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown scenario: " + name);
  return it->second.fn(opts);
}

Summary summarize(const std::vector<double>& values) {
  Summary s;
  s.n = int(values.size());
  if (s.n == 0) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / double(s.n);
  if (s.n >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stderr_ = std::sqrt(ss / double(s.n - 1) / double(s.n));
  }
  return s;
}

std::vector<std::string> summarize(const ResultTable& table, bool to_db) {
  std::vector<const ResultRow*> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow* a, const ResultRow* b) {
                     if (a->scenario != b->scenario)
                       return a->scenario < b->scenario;
                     if (a->sweep_value != b->sweep_value)
                       return a->sweep_value < b->sweep_value;
                     if (a->method != b->method) return a->method < b->method;
                     return a->metric < b->metric;
                   });
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const ResultRow* r : rows) {
    // Only nonnegative means are power-like and eligible for the dBm view;
    // dB-ratio metrics may legitimately be negative and stay untouched.
    const bool convert = to_db && r->mean >= 0.0 && !std::isnan(r->mean);
    const double mean = convert ? watts_to_dbm(r->mean) : r->mean;
    std::string line = r->scenario + " x=" + format_number(r->sweep_value) +
                       " " + r->method + " " + r->metric + " = " +
                       format_number(mean);
    if (convert)
      line += " dBm";
    else
      line += " +/- " + format_number(r->stderr_);
    line += " (n=" + std::to_string(r->n_trials) + ")";
    out.push_back(std::move(line));
  }
  return out;
}

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_csv(const ResultTable& table, std::ostream& os) {
  os << "scenario,sweep_value,method,metric,mean,stderr,n_trials,seed\n";
  for (const auto& r : table.rows) {
    os << r.scenario << "," << format_number(r.sweep_value) << "," << r.method
       << "," << r.metric << "," << format_number(r.mean) << ","
       << format_number(r.stderr_) << "," << r.n_trials << "," << r.seed
       << "\n";
  }
}

void write_plotdata(const ResultTable& table, std::ostream& os) {
  std::vector<const ResultRow*> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ResultRow* a, const ResultRow* b) {
                     const std::string sa = a->method + ":" + a->metric;
                     const std::string sb = b->method + ":" + b->metric;
                     if (sa != sb) return sa < sb;
                     return a->sweep_value < b->sweep_value;
                   });
  os << "# x series y y_stderr\n";
  for (const ResultRow* r : rows)
    os << format_number(r->sweep_value) << " " << r->method << ":" << r->metric
       << " " << format_number(r->mean) << " " << format_number(r->stderr_)
       << "\n";
}

}  // namespace swipt
