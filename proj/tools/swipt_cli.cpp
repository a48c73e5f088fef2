// Command-line front end: scenario runs, single-shot solves, and the
// complexity table. Exit codes: 0 success, 1 infeasible or solver failure,
// 2 usage or configuration error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "swipt/beamforming.hpp"
#include "swipt/complexity.hpp"
#include "swipt/config_io.hpp"
#include "swipt/harness.hpp"

namespace {

using namespace swipt;

struct GlobalOpts {
  uint64_t seed = 1;
  int trials = -1;
  std::string out_path;
  std::string format = "csv";
  double tol = 1e-8;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
};

void add_globals(CLI::App* cmd, GlobalOpts& g) {
  g.seed_opt = cmd->add_option("--seed", g.seed, "base seed for all randomness");
  g.trials_opt =
      cmd->add_option("--trials", g.trials, "Monte Carlo trials per cell");
  cmd->add_option("--out", g.out_path, "output file (default: stdout)");
  cmd->add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"csv", "plotdata"}));
  cmd->add_option("--tol", g.tol, "solver duality-gap target");
}

// Streams to --out when given, stdout otherwise.
class OutStream {
 public:
  explicit OutStream(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file: " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int cmd_list_scenarios() {
  for (const auto& s : list_scenarios())
    std::cout << s.name << " - " << s.description << "\n";
  return 0;
}

int unknown_scenario(const std::string& name) {
  std::cerr << "unknown scenario '" << name << "'; known scenarios:\n";
  for (const auto& s : list_scenarios()) std::cerr << "  " << s.name << "\n";
  return 2;
}

// The positional argument may instead name a small key/value file selecting
// the scenario and run options, e.g. "scenario = tab4_power_ratio".
// Explicit command-line flags still win.
int cmd_run_scenario(const std::string& arg, const GlobalOpts& g) {
  std::string name = arg;
  RunOptions opts;
  opts.seed = g.seed;
  opts.trials = g.trials;
  opts.tol = g.tol;
  if (!is_scenario(arg)) {
    std::ifstream in(arg);
    if (!in) return unknown_scenario(arg);
    std::string line;
    name.clear();
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto cut = line.find_first_of("#;");
      if (cut != std::string::npos) line.erase(cut);
      std::istringstream ls(line);
      std::string key, eq, val;
      if (!(ls >> key)) continue;
      if (!(ls >> eq >> val) || eq != "=")
        throw ConfigError(arg + ": line " + std::to_string(lineno) +
                          ": expected 'key = value'");
      if (key == "scenario")
        name = val;
      else if (key == "seed")
        opts.seed = std::stoull(val);
      else if (key == "trials")
        opts.trials = std::stoi(val);
      else if (key == "n_symbols")
        opts.n_symbols = std::stoi(val);
      else if (key == "tol")
        opts.tol = std::stod(val);
      else
        throw ConfigError(arg + ": unknown key '" + key + "'");
    }
    // Flags the user typed override file values.
    if (g.seed_opt && g.seed_opt->count() > 0) opts.seed = g.seed;
    if (g.trials_opt && g.trials_opt->count() > 0) opts.trials = g.trials;
    if (name.empty() || !is_scenario(name)) return unknown_scenario(name);
  }
  const ResultTable table = run_scenario(name, opts);
  OutStream out(g.out_path);
  if (g.format == "plotdata")
    write_plotdata(table, out.get());
  else
    write_csv(table, out.get());
  return 0;
}

int cmd_solve(const std::string& config_path, const std::string& method_str,
              const GlobalOpts& g) {
  const SystemConfig cfg = parse_config_file(config_path);
  const Method method = method_from_name(method_str);
  const ChannelSet ch = generate_channels(cfg, g.seed);
  SolveOptions so;
  so.tol = g.tol;
  const BeamformingSolution sol = solve_by_method(method, ch, cfg, so);
  OutStream out(g.out_path);
  out.get() << to_text(sol);
  if (!sol.feasible) {
    std::cerr << "solve failed: " << sol.diagnostic << "\n";
    return 1;
  }
  const EvalReport rep = evaluate(ch, sol, cfg, EvalOptions{});
  out.get() << "worst_capacity = " << format_number(rep.worst_capacity) << "\n"
            << "total_rf_w = " << format_number(rep.total_rf) << "\n"
            << "total_dc_w = " << format_number(rep.total_dc) << "\n"
            << "qos_met = " << (rep.qos_met ? "yes" : "no") << "\n";
  return 0;
}

int cmd_complexity(int M, int KI, int KE, int rI, int rE,
                   const GlobalOpts& g) {
  ComplexityDims dims;
  dims.M = M;
  dims.K_I = KI;
  dims.K_E = KE;
  dims.r_I = rI;
  dims.r_E = rE;
  const Method methods[] = {Method::kNullspaceSdr,
                            Method::kNullspaceSdrEnergyBeam,
                            Method::kClosedForm, Method::kFullSdr,
                            Method::kFullSdrNoEnergyBeam};
  OutStream out(g.out_path);
  std::ostream& os = out.get();
  char buf[128];
  os << "method,flops\n";
  for (Method m : methods) {
    std::snprintf(buf, sizeof buf, "%s,%.1f", method_name(m),
                  complexity_of(m, dims));
    os << buf << "\n";
  }
  os << "reduction,closed-form vs,percent\n";
  for (Method m : {Method::kNullspaceSdr, Method::kNullspaceSdrEnergyBeam,
                   Method::kFullSdr, Method::kFullSdrNoEnergyBeam}) {
    std::snprintf(buf, sizeof buf, "reduction,%s,%.2f%%", method_name(m),
                  reduction_percent(Method::kClosedForm, m, dims));
    os << buf << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multiuser wireless information-and-power beamforming simulator"};
  app.require_subcommand(1);

  GlobalOpts g_run, g_solve, g_cx;

  CLI::App* run = app.add_subcommand(
      "run-scenario", "run a named Monte Carlo study (name or options file)");
  std::string scenario_arg;
  run->add_option("name", scenario_arg, "scenario name or options file")
      ->required();
  add_globals(run, g_run);

  CLI::App* solve =
      app.add_subcommand("solve", "solve one configuration with one method");
  std::string config_path, method_str;
  solve->add_option("--config", config_path, "scenario configuration file")
      ->required();
  solve->add_option("--method", method_str,
                    "nullspace-sdr | nullspace-sdr-eb | closed-form | "
                    "full-sdr | full-sdr-no-eb (aliases: alg1, p24, alg2, "
                    "benchmark, benchmark-no-eb)")
      ->required();
  add_globals(solve, g_solve);

  CLI::App* cx = app.add_subcommand(
      "complexity-table", "arithmetic cost model for each design method");
  int M = 16, KI = 2, KE = 2, rI = -1, rE = -1;
  cx->add_option("--M", M, "transmit antennas");
  cx->add_option("--KI", KI, "information users");
  cx->add_option("--KE", KE, "energy users");
  cx->add_option("--rI", rI, "interference null-space cut (default K_I-1)");
  cx->add_option("--rE", rE, "energy null-space cut (default K_I)");
  add_globals(cx, g_cx);

  CLI::App* ls = app.add_subcommand("list-scenarios", "list known scenarios");
  (void)ls;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand("list-scenarios")) return cmd_list_scenarios();
    if (app.got_subcommand("run-scenario"))
      return cmd_run_scenario(scenario_arg, g_run);
    if (app.got_subcommand("solve"))
      return cmd_solve(config_path, method_str, g_solve);
    if (app.got_subcommand("complexity-table"))
      return cmd_complexity(M, KI, KE, rI, rE, g_cx);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
