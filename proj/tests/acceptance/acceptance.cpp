// End-to-end acceptance gate. Each case prints one PASS/FAIL line so the
// overall verdict can be read off the log, and every quantity is checked at
// the tolerance the project promises.
#include "doctest.h"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "swipt/beamforming.hpp"
#include "swipt/complexity.hpp"
#include "swipt/energy.hpp"
#include "swipt/harness.hpp"
#include "swipt/rng.hpp"
#include "swipt/sdp.hpp"

using namespace swipt;

namespace {

void report(int id, const char* label, bool pass) {
  std::printf("criterion %d [%s]: %s\n", id, label, pass ? "PASS" : "FAIL");
  std::fflush(stdout);
  CHECK_MESSAGE(pass, std::string(label));
}

double round2(double x) { return std::round(x * 100.0) / 100.0; }

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

const ResultRow* find_row(const ResultTable& t, double sweep,
                          const std::string& method,
                          const std::string& metric) {
  for (const auto& r : t.rows)
    if (r.sweep_value == sweep && r.method == method && r.metric == metric)
      return &r;
  return nullptr;
}

}  // namespace

TEST_CASE("acceptance") {

  // ------------------------------------------------------------------ 1 ---
  {
    ComplexityDims small;
    small.M = 8;
    small.K_I = 2;
    small.K_E = 2;
    ComplexityDims large;
    large.M = 16;
    large.K_I = 4;
    large.K_E = 4;
    const double t0 = now_ms();
    const double r[6] = {
        reduction_percent(Method::kClosedForm,
                          Method::kNullspaceSdrEnergyBeam, small),
        reduction_percent(Method::kClosedForm,
                          Method::kNullspaceSdrEnergyBeam, large),
        reduction_percent(Method::kClosedForm, Method::kFullSdr, small),
        reduction_percent(Method::kClosedForm, Method::kFullSdr, large),
        reduction_percent(Method::kClosedForm, Method::kFullSdrNoEnergyBeam,
                          small),
        reduction_percent(Method::kClosedForm, Method::kFullSdrNoEnergyBeam,
                          large)};
    const double elapsed = now_ms() - t0;
    const double want[6] = {91.43, 98.54, 94.01, 99.26, 93.34, 99.25};
    bool ok = elapsed < 1.0;
    CHECK(elapsed < 1.0);
    for (int i = 0; i < 6; ++i) {
      CHECK(round2(r[i]) == want[i]);
      ok = ok && round2(r[i]) == want[i];
    }
    report(1, "closed-form cost reductions", ok);
  }

  // ------------------------------------------------------------------ 2 ---
  {
    const EhParams eh;
    const double at_zero = eh_transfer(0.0, eh);
    const double at_watt = eh_transfer(1.0, eh);
    bool ok = at_zero == 0.0;
    CHECK(at_zero == 0.0);
    const double rel = std::abs(at_watt - eh.Ms) / eh.Ms;
    CHECK(rel <= 1e-6);
    ok = ok && rel <= 1e-6;
    report(2, "rectifier endpoints", ok);
  }

  // ------------------------------------------------------------------ 3 ---
  {
    SystemConfig cfg;
    bool ok = true;
    for (uint64_t seed = 1; seed <= 100; ++seed) {
      const ChannelSet ch = generate_channels(cfg, seed);
      const auto bench = solve_full_sdr(ch, cfg, true, {});
      const bool b_ok =
          bench.feasible && bench.trace_energy_block <= 1e-6 * cfg.P_max;
      CHECK(b_ok);
      const auto red = solve_nullspace_sdr(ch, cfg, {});
      bool r_ok = red.feasible;
      for (double rr : red.rank_residual) r_ok = r_ok && rr <= 1e-6;
      CHECK(r_ok);
      ok = ok && b_ok && r_ok;
    }
    report(3, "energy-block collapse and rank-one covariances", ok);
  }

  // ------------------------------------------------------------------ 4 ---
  {
    bool ok = true;
    SystemConfig big;
    big.K_I = 4;
    big.K_E = 4;
    for (uint64_t seed = 1; seed <= 30; ++seed) {
      const ChannelSet ch = generate_channels(big, seed);
      const double ref = ch.H_I.norm();
      for (int r_E = 1; r_E <= 6; ++r_E) {
        const NullSpaceBasis ns = build_bases(ch, -1, r_E);
        const double resid = (ch.H_I * ns.N_E).norm();
        const bool annihilated = resid <= 1e-10 * ref;
        const bool should = r_E >= big.K_I;
        CHECK(annihilated == should);
        ok = ok && annihilated == should;
      }
    }
    SystemConfig cfg;
    for (uint64_t seed = 1; seed <= 200; ++seed) {
      const ChannelSet ch = generate_channels(cfg, seed);
      const NullSpaceBasis ns = build_bases(ch);
      const EquivalentChannels eq = build_equivalents(ch, ns);
      for (int i = 0; i < cfg.K_I; ++i) {
        const bool sandwich =
            interlacing_check(eq.S_Ei[size_t(i)], eq.S_E).ok;
        CHECK(sandwich);
        ok = ok && sandwich;
      }
    }
    report(4, "annihilation dichotomy and eigenvalue interlacing", ok);
  }

  // ------------------------------------------------------------------ 5 ---
  {
    SystemConfig cfg;
    const Method methods[] = {Method::kNullspaceSdr,
                              Method::kNullspaceSdrEnergyBeam,
                              Method::kClosedForm, Method::kFullSdr,
                              Method::kFullSdrNoEnergyBeam};
    bool ok = true;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      const ChannelSet ch = generate_channels(cfg, seed);
      for (Method m : methods) {
        const auto sol = solve_by_method(m, ch, cfg, {});
        if (!sol.feasible) continue;
        EvalOptions eo;
        eo.with_dc = false;
        const EvalReport rep = evaluate(ch, sol, cfg, eo);
        const bool served = rep.worst_capacity >= cfg.C_thre - 1e-6;
        CHECK(served);
        ok = ok && served;
        if (m == Method::kClosedForm) {
          for (int i = 0; i < cfg.K_I; ++i) {
            const double rel =
                std::abs(rep.capacity(i) - cfg.C_thre) / cfg.C_thre;
            CHECK(rel <= 1e-9);
            ok = ok && rel <= 1e-9;
          }
        }
      }
    }
    report(5, "service targets met by every design", ok);
  }

  // ------------------------------------------------------------------ 6 ---
  {
    const int n = 200;
    bool ok = true;
    for (int M : {8, 16, 32}) {
      SystemConfig cfg;
      cfg.M = M;
      double paired_eb = 0.0, paired_full = 0.0;
      for (int tr = 0; tr < n; ++tr) {
        const uint64_t s = Rng::derive(99, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        EvalOptions eo;
        eo.with_dc = false;
        const double plain =
            evaluate(ch, solve_nullspace_sdr(ch, cfg, {}), cfg, eo).total_rf;
        const double eb =
            evaluate(ch, solve_nullspace_sdr_eb(ch, cfg, {}), cfg, eo)
                .total_rf;
        paired_eb += 10.0 * std::log10(plain / eb);
        if (M == 16) {
          const double full =
              evaluate(ch, solve_full_sdr(ch, cfg, true, {}), cfg, eo)
                  .total_rf;
          paired_full += 10.0 * std::log10(full / plain);
        }
      }
      const double gap = paired_eb / n;
      // Dedicated-block cost shrinks as the array grows; each band is the
      // published gap with +/- 0.3 dB slack.
      const double lo = M == 8 ? 0.7 : M == 16 ? 0.2 : -0.1;
      const double hi = M == 8 ? 1.3 : M == 16 ? 0.8 : 0.5;
      CHECK(gap >= lo);
      CHECK(gap <= hi);
      ok = ok && gap >= lo && gap <= hi;
      if (M == 16) {
        const double bench_gap = paired_full / n;
        CHECK(std::abs(bench_gap) <= 0.5);
        ok = ok && std::abs(bench_gap) <= 0.5;
      }
    }
    report(6, "reduced designs track the benchmark power", ok);
  }

  // ------------------------------------------------------------------ 7 ---
  {
    const double t0 = now_ms();
    struct Cell {
      double P;
      int M, K;
      double want_db;
    };
    const Cell cells[] = {{1.0, 16, 4, 9.2},
                          {1.0, 16, 2, 13.9},
                          {10.0, 32, 4, 23.7},
                          {10.0, 32, 2, 27.3}};
    bool ok = true;
    for (const Cell& c : cells) {
      SystemConfig cfg;
      cfg.M = c.M;
      cfg.K_I = c.K;
      cfg.K_E = c.K;
      cfg.P_max = c.P;
      double sum_db = 0.0;
      int feasible = 0;
      for (int tr = 0; tr < 500; ++tr) {
        const uint64_t s = Rng::derive(1, uint64_t(tr));
        const ChannelSet ch = generate_channels(cfg, s);
        const auto sol = solve_closed_form(ch, cfg, {});
        if (!sol.feasible) continue;
        sum_db += 10.0 * std::log10(sol.P_E / sol.P_I.sum());
        ++feasible;
      }
      CHECK(feasible >= 490);
      const double mean_db = sum_db / feasible;
      const bool in_band = std::abs(mean_db - c.want_db) <= 1.0;
      CHECK_MESSAGE(in_band, "P=", c.P, " M=", c.M, " K=", c.K, " got ",
                    mean_db);
      ok = ok && in_band && feasible >= 490;
    }
    const double elapsed = now_ms() - t0;
    CHECK(elapsed < 600000.0);
    ok = ok && elapsed < 600000.0;
    report(7, "harvest-to-service power ratios", ok);
  }

  // ------------------------------------------------------------------ 8 ---
  {
    RunOptions opts;
    opts.seed = 1;
    opts.trials = 10;
    const ResultTable t = run_scenario("fig9_waveform", opts);
    bool ok = true;
    for (int M : {16, 32}) {
      const std::string g = "gaussian[M=" + std::to_string(M) + "]";
      const std::string s = "sinusoid[M=" + std::to_string(M) + "]";
      double low_win = -1.0, high_win = -1.0;  // sweep values, -1 = none
      for (const auto& row : t.rows) {
        if (row.method != g || row.metric != "total_dc") continue;
        const ResultRow* other = find_row(t, row.sweep_value, s, "total_dc");
        REQUIRE(other != nullptr);
        if (row.mean > other->mean &&
            (low_win < 0.0 || row.sweep_value < low_win))
          low_win = row.sweep_value;
        if (other->mean > row.mean && row.sweep_value > high_win)
          high_win = row.sweep_value;
      }
      // Gaussian fluctuations win below the rectifier knee, the constant
      // envelope wins beyond it: both regimes must appear, in that order.
      const bool crossover =
          low_win > 0.0 && high_win > 0.0 && low_win < high_win;
      CHECK_MESSAGE(crossover, "M=", M, " low=", low_win, " high=", high_win);
      ok = ok && crossover;
    }
    report(8, "waveform crossover through the nonlinear rectifier", ok);
  }

  // ------------------------------------------------------------------ 9 ---
  {
    RunOptions opts;
    opts.seed = 1;
    const ResultTable t = run_scenario("fig6_csi_error", opts);
    const double rhos[] = {0.0, 0.05, 0.1, 0.2};
    bool ok = true;
    double drop[2] = {0.0, 0.0};  // capacity loss over the rho range per P
    int pi = 0;
    for (double P : {2.0, 8.0}) {
      const std::string series = "nullspace-sdr[P=" + format_number(P) + "]";
      for (const char* metric : {"worst_capacity", "total_rf"}) {
        for (int j = 0; j + 1 < 4; ++j) {
          const ResultRow* a = find_row(t, rhos[j], series, metric);
          const ResultRow* b = find_row(t, rhos[j + 1], series, metric);
          REQUIRE(a != nullptr);
          REQUIRE(b != nullptr);
          // Nonincreasing within one standard error on either side.
          const bool mono = b->mean <= a->mean + a->stderr_ + b->stderr_;
          CHECK_MESSAGE(mono, series, " ", metric, " rho ", rhos[j], "->",
                        rhos[j + 1]);
          ok = ok && mono;
        }
      }
      const ResultRow* c0 = find_row(t, 0.0, series, "worst_capacity");
      const ResultRow* c3 = find_row(t, 0.2, series, "worst_capacity");
      drop[pi++] = c0->mean - c3->mean;
    }
    // Mismatch leakage scales with the budget, so the larger budget loses
    // more capacity over the same error range.
    CHECK(drop[1] > drop[0]);
    ok = ok && drop[1] > drop[0];
    report(9, "imperfect knowledge degrades smoothly", ok);
  }

  // ----------------------------------------------------------------- 10 ---
  {
    bool ok = true;
    for (uint64_t seed = 0; seed < 100; ++seed) {
      const int n = 2 + int(seed % 7);
      Rng rng(500 + seed);
      CMat A(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = rng.cnormal();
      CMat C = 0.5 * (A + A.adjoint());
      Eigen::SelfAdjointEigenSolver<CMat> pre(C);
      C += (std::abs(pre.eigenvalues()(n - 1)) + 0.1) *
           CMat::Identity(n, n);
      const double P = 0.5 + double(seed % 5);

      SdpProblem prob;
      prob.block_dims = {n};
      prob.C = {C};
      SdpConstraint con;
      con.A = {CMat::Identity(n, n)};
      con.sense = ConstraintSense::kLe;
      con.bound = P;
      prob.constraints.push_back(con);

      const SdpSolution sol = solve(prob, {});
      const bool optimal = sol.status == SdpStatus::kOptimal;
      CHECK(optimal);
      ok = ok && optimal;
      if (!optimal) continue;

      const bool gap_ok =
          sol.duality_gap <= 1e-7 * (1.0 + std::abs(sol.objective));
      CHECK(gap_ok);
      // Constraint violation, relative to the bound.
      const double viol = (sol.X[0].trace().real() - P) / P;
      const bool feas_ok = viol <= 1e-7;
      CHECK(feas_ok);
      Eigen::SelfAdjointEigenSolver<CMat> es(C);
      const double want = P * es.eigenvalues()(n - 1);
      const double rel = std::abs(sol.objective - want) / std::abs(want);
      const bool obj_ok = rel <= 1e-6;
      CHECK(obj_ok);
      ok = ok && gap_ok && feas_ok && obj_ok;
    }
    report(10, "solver certificates and eigenvalue closed form", ok);
  }
}
