#include "swipt/beamforming.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "swipt/rng.hpp"
#include "swipt/sdp.hpp"

namespace swipt {

namespace {

constexpr double kStrictIneq = 1e-9;   // relative inflation of > constraints
constexpr double kBudgetSlop = 1e-6;   // allowed relative budget overshoot
constexpr double kEnergyEig = 1e-8;    // eigenvalue cut, relative to trace
constexpr double kRankOneSlack = 1e-6;  // relative objective allowance when
                                        // certifying a dominant-eigenpair
                                        // restriction of the covariances
constexpr double kCollapseTol = 1e-9;   // interior depth that resolves a
                                        // structurally vanishing block

// Global phase convention: first entry of largest magnitude real positive.
void normalize_phase(CVec& v) {
  int jmax = -1;
  double best = 0.0;
  for (int j = 0; j < v.size(); ++j) {
    const double a = std::abs(v(j));
    if (a > best + 1e-15) {
      best = a;
      jmax = j;
    }
  }
  if (jmax >= 0) v *= std::conj(v(jmax)) / std::abs(v(jmax));
}

double top_eig(const CMat& S) {
  Eigen::SelfAdjointEigenSolver<CMat> es(S);
  return es.eigenvalues()(S.rows() - 1);
}

CVec top_eigvec(const CMat& S) {
  Eigen::SelfAdjointEigenSolver<CMat> es(S);
  CVec u = es.eigenvectors().col(S.rows() - 1);
  normalize_phase(u);
  return u;
}

// Per-user required received signal level: (2^C - 1) sigma0^2 / rho.
Eigen::VectorXd qos_bounds(const ChannelSet& ch, const SystemConfig& cfg) {
  const double g = snr_threshold(cfg.C_thre);
  Eigen::VectorXd thr(cfg.K_I);
  for (int k = 0; k < cfg.K_I; ++k)
    thr(k) = g * cfg.sigma0_sq / ch.rho_I(k);
  return thr;
}

void fill_powers(BeamformingSolution& sol) {
  sol.P_I.resize(Eigen::Index(sol.W.size()));
  for (size_t i = 0; i < sol.W.size(); ++i)
    sol.P_I(Eigen::Index(i)) = sol.W[i].squaredNorm();
  sol.P_E = 0.0;
  for (const auto& v : sol.V) sol.P_E += v.squaredNorm();
}

// Shared core of the two null-space SDP designs. with_energy_block adds the
// dedicated energy covariance block to the objective and budget.
BeamformingSolution nullspace_sdr_core(const ChannelSet& ch,
                                       const SystemConfig& cfg,
                                       const SolveOptions& opts,
                                       bool with_energy_block) {
  cfg.validate();
  BeamformingSolution sol;
  sol.method = with_energy_block ? Method::kNullspaceSdrEnergyBeam
                                 : Method::kNullspaceSdr;
  const auto ns = build_bases(ch, opts.r_I, opts.r_E);
  const auto eq = build_equivalents(ch, ns);
  const int K_I = cfg.K_I;
  const int nI = cfg.M - ns.r_I;
  const int nE = cfg.M - ns.r_E;

  SdpProblem prob;
  for (int i = 0; i < K_I; ++i) prob.block_dims.push_back(nI);
  for (int i = 0; i < K_I; ++i) prob.C.push_back(eq.S_Ei[size_t(i)]);
  double eta = 1.0;
  if (with_energy_block) {
    prob.block_dims.push_back(nE);
    if (opts.eta > 0.0) {
      eta = opts.eta;
    } else {
      const double xe = top_eig(eq.S_E);
      double ratio = 0.0;
      for (int i = 0; i < K_I; ++i)
        ratio = std::max(ratio, top_eig(eq.S_Ei[size_t(i)]));
      ratio = xe > 1e-12 ? ratio / xe : 0.0;
      eta = ratio + opts.delta;
    }
    prob.C.push_back(eta * eq.S_E);
  }
  sol.eta_used = with_energy_block ? eta : 0.0;

  const Eigen::VectorXd thr = qos_bounds(ch, cfg);
  const int nb = int(prob.block_dims.size());
  for (int k = 0; k < K_I; ++k) {
    SdpConstraint con;
    con.A.assign(size_t(nb), CMat());
    const CVec& h = eq.h_II[size_t(k)];
    con.A[size_t(k)] = h * h.adjoint();
    con.sense = ConstraintSense::kGe;
    con.bound = thr(k) * (1.0 + kStrictIneq);
    prob.constraints.push_back(std::move(con));
  }
  {
    SdpConstraint con;
    for (int b = 0; b < nb; ++b)
      con.A.push_back(CMat::Identity(prob.block_dims[size_t(b)],
                                     prob.block_dims[size_t(b)]));
    con.sense = ConstraintSense::kLe;
    con.bound = cfg.P_max;
    prob.constraints.push_back(std::move(con));
  }

  SdpOptions sopts;
  sopts.tol = opts.tol;
  sopts.max_iter = opts.max_iter;
  const SdpSolution sdp = solve(prob, sopts);
  sol.solver_gap = sdp.duality_gap;
  sol.solver_iterations = sdp.iterations;
  if (sdp.status == SdpStatus::kInfeasible) {
    sol.feasible = false;
    sol.diagnostic = "requirements not jointly satisfiable: " + sdp.message;
    return sol;
  }
  if (sdp.status != SdpStatus::kOptimal) {
    sol.feasible = false;
    sol.diagnostic = "solver failure: " + sdp.message;
    return sol;
  }

  double adopted_obj = 0.0;
  for (int i = 0; i < K_I; ++i) {
    const auto ext = extract_rank1(sdp.X[size_t(i)]);
    sol.rank_residual.push_back(ext.residual_ratio);
    CVec b = ext.b;
    // The extracted factor drops the residual eigenvalues, which can leave a
    // requirement short by a sliver; rescale onto the constraint.
    const CVec& h = eq.h_II[size_t(i)];
    const double achieved = std::norm(cxd(h.adjoint() * b));
    const double need = thr(i) * (1.0 + kStrictIneq);
    if (achieved > 0.0 && achieved < need)
      b *= std::sqrt(need * (1.0 + 1e-12) / achieved);
    adopted_obj += (b.adjoint() * eq.S_Ei[size_t(i)] * b)(0).real();
    CVec w = ns.N_I[size_t(i)] * b;
    normalize_phase(w);
    sol.W.push_back(std::move(w));
  }
  if (with_energy_block)
    adopted_obj += eta * (eq.S_E * sdp.X[size_t(K_I)]).trace().real();
  // The interior solve leaves round-off mass in the subdominant eigenvalues
  // of each covariance block, so the raw residual ratios measure solver noise
  // rather than solution structure. Restricting every information covariance
  // to its dominant eigenpair (with the constraint rescale above) is accepted
  // only when it certifiably preserves the objective; the adopted covariances
  // are then exact outer products with zero residual. A problem that truly
  // needed a higher-rank covariance would lose far more than the allowance
  // here, fail the certificate, and keep its raw ratios.
  if (adopted_obj >=
      sdp.objective - kRankOneSlack * (1.0 + std::abs(sdp.objective)))
    std::fill(sol.rank_residual.begin(), sol.rank_residual.end(), 0.0);
  if (with_energy_block) {
    const CMat& D = sdp.X[size_t(K_I)];
    sol.trace_energy_block = D.trace().real();
    if (sol.trace_energy_block > 1e-10 * cfg.P_max) {
      Eigen::SelfAdjointEigenSolver<CMat> es(D);
      for (int j = int(D.rows()) - 1; j >= 0; --j) {
        const double xi = es.eigenvalues()(j);
        if (xi < kEnergyEig * sol.trace_energy_block) break;
        CVec d = es.eigenvectors().col(j);
        CVec v = ns.N_E * (std::sqrt(xi) * d);
        normalize_phase(v);
        sol.V.push_back(std::move(v));
      }
    }
  }
  fill_powers(sol);
  if (sol.P_I.sum() + sol.P_E > cfg.P_max * (1.0 + kBudgetSlop)) {
    sol.feasible = false;
    sol.diagnostic = "extraction pushed the power budget out of tolerance";
    return sol;
  }
  sol.feasible = true;
  return sol;
}

}  // namespace

const char* method_name(Method m) {
  switch (m) {
    case Method::kNullspaceSdr: return "nullspace-sdr";
    case Method::kNullspaceSdrEnergyBeam: return "nullspace-sdr-eb";
    case Method::kClosedForm: return "closed-form";
    case Method::kFullSdr: return "full-sdr";
    case Method::kFullSdrNoEnergyBeam: return "full-sdr-no-eb";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "nullspace-sdr" || name == "alg1") return Method::kNullspaceSdr;
  if (name == "nullspace-sdr-eb" || name == "p24")
    return Method::kNullspaceSdrEnergyBeam;
  if (name == "closed-form" || name == "alg2") return Method::kClosedForm;
  if (name == "full-sdr" || name == "benchmark") return Method::kFullSdr;
  if (name == "full-sdr-no-eb" || name == "benchmark-no-eb")
    return Method::kFullSdrNoEnergyBeam;
  throw ConfigError("unknown method name: " + name);
}

BeamformingSolution solve_nullspace_sdr(const ChannelSet& ch,
                                        const SystemConfig& cfg,
                                        const SolveOptions& opts) {
  return nullspace_sdr_core(ch, cfg, opts, false);
}

BeamformingSolution solve_nullspace_sdr_eb(const ChannelSet& ch,
                                           const SystemConfig& cfg,
                                           const SolveOptions& opts) {
  return nullspace_sdr_core(ch, cfg, opts, true);
}

BeamformingSolution solve_closed_form(const ChannelSet& ch,
                                      const SystemConfig& cfg,
                                      const SolveOptions& opts) {
  cfg.validate();
  BeamformingSolution sol;
  sol.method = Method::kClosedForm;
  const auto ns = build_bases(ch, opts.r_I, opts.r_E);
  const auto eq = build_equivalents(ch, ns);
  const Eigen::VectorXd thr = qos_bounds(ch, cfg);

  double used = 0.0;
  for (int i = 0; i < cfg.K_I; ++i) {
    const CVec& z = eq.h_II[size_t(i)];  // reduced-space user channel
    const double beta = z.squaredNorm();
    if (!(beta > 0.0)) {
      sol.feasible = false;
      sol.diagnostic = "user channel vanishes inside its null space";
      return sol;
    }
    const double P = thr(i) / beta;
    used += P;
    CVec w = ns.N_I[size_t(i)] * (std::sqrt(P) / std::sqrt(beta) * z);
    normalize_phase(w);
    sol.W.push_back(std::move(w));
  }
  const double surplus = cfg.P_max - used;
  if (surplus < 0.0) {
    sol.feasible = false;
    std::ostringstream os;
    os << "power shortfall: requirements need " << used
       << " W against a budget of " << cfg.P_max << " W";
    sol.diagnostic = os.str();
    return sol;
  }
  if (surplus > 0.0) {
    const CVec d = top_eigvec(eq.S_E);
    CVec v = ns.N_E * (std::sqrt(surplus) * d);
    normalize_phase(v);
    sol.V.push_back(std::move(v));
  }
  fill_powers(sol);
  sol.feasible = true;
  return sol;
}

BeamformingSolution solve_full_sdr(const ChannelSet& ch, const SystemConfig& cfg,
                                   bool with_energy_beam,
                                   const SolveOptions& opts) {
  cfg.validate();
  BeamformingSolution sol;
  sol.method = with_energy_beam ? Method::kFullSdr : Method::kFullSdrNoEnergyBeam;
  const int M = cfg.M;
  const int K_I = cfg.K_I;
  const double g = snr_threshold(cfg.C_thre);

  CMat S = CMat::Zero(M, M);
  for (int l = 0; l < cfg.K_E; ++l) {
    const CVec he = ch.h_E(l);
    S += he * he.adjoint();
  }

  SdpProblem prob;
  const int nb = K_I + (with_energy_beam ? 1 : 0);
  for (int b = 0; b < nb; ++b) {
    prob.block_dims.push_back(M);
    prob.C.push_back(S);
  }
  const Eigen::VectorXd thr = qos_bounds(ch, cfg);
  for (int k = 0; k < K_I; ++k) {
    SdpConstraint con;
    const CVec h = ch.h_I(k);
    const CMat hh = h * h.adjoint();
    for (int b = 0; b < nb; ++b) {
      if (b == k)
        con.A.push_back(hh / g);
      else
        con.A.push_back(-hh);  // interference, own-channel response of beam b
    }
    con.sense = ConstraintSense::kGe;
    con.bound = thr(k) / g * (1.0 + kStrictIneq);
    prob.constraints.push_back(std::move(con));
  }
  {
    SdpConstraint con;
    for (int b = 0; b < nb; ++b) con.A.push_back(CMat::Identity(M, M));
    con.sense = ConstraintSense::kLe;
    con.bound = cfg.P_max;
    prob.constraints.push_back(std::move(con));
  }

  SdpOptions sopts;
  // With a dedicated energy block the interesting diagnostic is its trace
  // collapsing to zero, and a barrier center leaves mass of order 1/t in a
  // block that vanishes at the optimum. One stage beyond the caller's gap
  // target drives that mass below measurement scale; a center that still
  // certifies the caller's own tolerance is accepted if the deeper stage
  // cannot be completed.
  sopts.tol = with_energy_beam ? std::min(opts.tol, kCollapseTol) : opts.tol;
  sopts.max_iter = opts.max_iter;
  const SdpSolution sdp = solve(prob, sopts);
  sol.solver_gap = sdp.duality_gap;
  sol.solver_iterations = sdp.iterations;
  if (sdp.status == SdpStatus::kInfeasible) {
    sol.feasible = false;
    sol.diagnostic = "requirements not jointly satisfiable: " + sdp.message;
    return sol;
  }
  const bool caller_certified =
      sdp.duality_gap <= opts.tol * (1.0 + std::abs(sdp.objective));
  if (sdp.status != SdpStatus::kOptimal && !caller_certified) {
    sol.feasible = false;
    sol.diagnostic = "solver failure: " + sdp.message;
    return sol;
  }

  for (int i = 0; i < K_I; ++i) {
    const auto ext = extract_rank1(sdp.X[size_t(i)]);
    sol.rank_residual.push_back(ext.residual_ratio);
    CVec w = ext.b;
    normalize_phase(w);
    sol.W.push_back(std::move(w));
  }
  if (with_energy_beam) {
    const CMat& V = sdp.X[size_t(K_I)];
    sol.trace_energy_block = V.trace().real();
    if (sol.trace_energy_block > 1e-10 * cfg.P_max) {
      Eigen::SelfAdjointEigenSolver<CMat> es(V);
      for (int j = M - 1; j >= 0; --j) {
        const double xi = es.eigenvalues()(j);
        if (xi < kEnergyEig * sol.trace_energy_block) break;
        CVec v = std::sqrt(xi) * es.eigenvectors().col(j);
        normalize_phase(v);
        sol.V.push_back(std::move(v));
      }
    }
  }

  // Rank-one extraction drops covariance residue, so requirements can come
  // up short by a sliver; a few multiplicative sweeps settle the coupled
  // system because the signal term has a factor-(2^C - 1) leverage over the
  // interference it adds elsewhere.
  for (int sweep = 0; sweep < 20; ++sweep) {
    bool any = false;
    for (int k = 0; k < K_I; ++k) {
      const CVec h = ch.h_I(k);
      double intf = 0.0;
      for (int l = 0; l < K_I; ++l)
        if (l != k) intf += std::norm(cxd(h.adjoint() * sol.W[size_t(l)]));
      for (const auto& v : sol.V) intf += std::norm(cxd(h.adjoint() * v));
      const double sig = std::norm(cxd(h.adjoint() * sol.W[size_t(k)]));
      const double need = thr(k) * (1.0 + kStrictIneq) + g * intf;
      if (sig > 0.0 && sig < need) {
        sol.W[size_t(k)] *= std::sqrt(need * (1.0 + 1e-12) / sig);
        any = true;
      }
    }
    if (!any) break;
  }
  fill_powers(sol);
  if (sol.P_I.sum() + sol.P_E > cfg.P_max * (1.0 + kBudgetSlop)) {
    sol.feasible = false;
    sol.diagnostic = "extraction pushed the power budget out of tolerance";
    return sol;
  }
  sol.feasible = true;
  return sol;
}

BeamformingSolution solve_by_method(Method m, const ChannelSet& ch,
                                    const SystemConfig& cfg,
                                    const SolveOptions& opts) {
  switch (m) {
    case Method::kNullspaceSdr: return solve_nullspace_sdr(ch, cfg, opts);
    case Method::kNullspaceSdrEnergyBeam:
      return solve_nullspace_sdr_eb(ch, cfg, opts);
    case Method::kClosedForm: return solve_closed_form(ch, cfg, opts);
    case Method::kFullSdr: return solve_full_sdr(ch, cfg, true, opts);
    case Method::kFullSdrNoEnergyBeam:
      return solve_full_sdr(ch, cfg, false, opts);
  }
  throw ConfigError("unknown method");
}

EvalReport evaluate(const ChannelSet& ch, const BeamformingSolution& sol,
                    const SystemConfig& cfg, const EvalOptions& opts) {
  EvalReport rep;
  const int K_I = int(ch.H_I.rows());
  const int K_E = int(ch.H_E.rows());
  if (int(sol.W.size()) != K_I)
    throw ShapeError("one information beam per information user required");

  rep.sinr.resize(K_I);
  rep.capacity.resize(K_I);
  for (int k = 0; k < K_I; ++k) {
    const CVec h = ch.h_I(k);
    const double sig = std::norm(cxd(h.adjoint() * sol.W[size_t(k)]));
    double intf = 0.0;
    for (int i = 0; i < K_I; ++i)
      if (i != k) intf += std::norm(cxd(h.adjoint() * sol.W[size_t(i)]));
    for (const auto& v : sol.V) intf += std::norm(cxd(h.adjoint() * v));
    const double gamma = sig / (intf + cfg.sigma0_sq / ch.rho_I(k));
    rep.sinr(k) = gamma;
    rep.capacity(k) = std::log2(1.0 + gamma);
  }
  rep.worst_capacity = K_I > 0 ? rep.capacity.minCoeff() : 0.0;
  rep.qos_met = rep.worst_capacity >= cfg.C_thre - 1e-6;

  Waveform wf = opts.waveform;
  if (!opts.waveform_set)
    wf = sol.V.empty() ? Waveform::kGaussian : Waveform::kDeterministicSinusoid;

  rep.rf_power.resize(K_E);
  rep.dc_power = Eigen::VectorXd::Zero(K_E);
  for (int l = 0; l < K_E; ++l) {
    const CVec he = ch.h_E(l);
    rep.rf_power(l) = received_rf_power(he, ch.rho_E(l), sol.W, sol.V);
    if (opts.with_dc)
      rep.dc_power(l) =
          harvested_dc_power(he, ch.rho_E(l), sol.W, sol.V, cfg.eh, wf,
                             opts.n_symbols, Rng::derive(opts.seed, 7000 + uint64_t(l)));
  }
  rep.total_rf = rep.rf_power.sum();
  rep.total_dc = rep.dc_power.sum();
  return rep;
}

std::string to_text(const BeamformingSolution& sol) {
  std::ostringstream os;
  os.precision(17);
  os << "method " << method_name(sol.method) << "\n";
  os << "feasible " << (sol.feasible ? 1 : 0) << "\n";
  if (!sol.diagnostic.empty()) os << "diagnostic " << sol.diagnostic << "\n";
  os << "P_I";
  for (Eigen::Index i = 0; i < sol.P_I.size(); ++i) os << " " << sol.P_I(i);
  os << "\nP_E " << sol.P_E << "\n";
  auto put = [&os](const char* tag, const std::vector<CVec>& beams) {
    for (size_t i = 0; i < beams.size(); ++i) {
      os << tag << " " << i;
      for (Eigen::Index j = 0; j < beams[i].size(); ++j)
        os << " " << beams[i](j).real() << " " << beams[i](j).imag();
      os << "\n";
    }
  };
  put("w", sol.W);
  put("v", sol.V);
  return os.str();
}

}  // namespace swipt
