#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/energy.hpp"
#include "swipt/nullspace.hpp"

namespace swipt {

// Beam design strategies.
//   kNullspaceSdr            information beams confined to per-user null
//                            spaces, powers from a reduced-size SDP, no
//                            dedicated energy beams
//   kNullspaceSdrEnergyBeam  adds a dedicated energy-beam block weighted by
//                            eta to the reduced SDP
//   kClosedForm              matched-filter beams in the null spaces with
//                            analytic power split, no SDP
//   kFullSdr                 full-antenna-space SDP with an energy covariance
//                            block, interference handled by constraints
//   kFullSdrNoEnergyBeam     full-space SDP without that block
enum class Method {
  kNullspaceSdr,
  kNullspaceSdrEnergyBeam,
  kClosedForm,
  kFullSdr,
  kFullSdrNoEnergyBeam,
};

const char* method_name(Method m);
Method method_from_name(const std::string& name);

struct BeamformingSolution {
  Method method = Method::kClosedForm;
  bool feasible = false;
  std::vector<CVec> W;  // information beams, one per information user
  std::vector<CVec> V;  // dedicated energy beams, possibly empty
  Eigen::VectorXd P_I;  // per-user information beam powers |w_i|^2
  double P_E = 0.0;     // total energy beam power
  std::string diagnostic;

  // Solver-side diagnostics, meaningful for the SDP-based methods.
  double solver_gap = 0.0;
  int solver_iterations = 0;
  std::vector<double> rank_residual;  // per information-beam block
  double trace_energy_block = 0.0;    // trace of the energy covariance block
  double eta_used = 0.0;              // energy-block objective weight
};

struct SolveOptions {
  double tol = 1e-8;  // SDP duality gap target
  int max_iter = 400;
  int r_I = -1;        // rank cuts; negative selects the guaranteed defaults
  int r_E = -1;
  double eta = -1.0;   // energy-block weight; negative selects the automatic
                       // choice max_i eigmax(S_Ei)/eigmax(S_E) + delta
  double delta = 10.0;
};

BeamformingSolution solve_nullspace_sdr(const ChannelSet& ch,
                                        const SystemConfig& cfg,
                                        const SolveOptions& opts = {});
BeamformingSolution solve_nullspace_sdr_eb(const ChannelSet& ch,
                                           const SystemConfig& cfg,
                                           const SolveOptions& opts = {});
BeamformingSolution solve_closed_form(const ChannelSet& ch,
                                      const SystemConfig& cfg,
                                      const SolveOptions& opts = {});
BeamformingSolution solve_full_sdr(const ChannelSet& ch, const SystemConfig& cfg,
                                   bool with_energy_beam,
                                   const SolveOptions& opts = {});
BeamformingSolution solve_by_method(Method m, const ChannelSet& ch,
                                    const SystemConfig& cfg,
                                    const SolveOptions& opts = {});

struct EvalOptions {
  bool with_dc = true;
  bool waveform_set = false;  // when false the waveform follows the method:
                              // designs with dedicated energy beams use the
                              // deterministic sinusoid, the rest Gaussian
  Waveform waveform = Waveform::kGaussian;
  int n_symbols = 10000;
  uint64_t seed = 0;
};

// Performance of a beam set on a (possibly different) channel realization.
// SINRs use the full interference expression, so leakage from mismatched or
// deliberately leaky designs shows up here.
struct EvalReport {
  Eigen::VectorXd sinr;      // per information user
  Eigen::VectorXd capacity;  // log2(1 + sinr)
  Eigen::VectorXd rf_power;  // per energy user, symbol averaged [W]
  Eigen::VectorXd dc_power;  // per energy user [W]; zero-filled if skipped
  double worst_capacity = 0.0;
  double total_rf = 0.0;
  double total_dc = 0.0;
  bool qos_met = false;  // worst capacity within 1e-6 of the requirement
};

EvalReport evaluate(const ChannelSet& ch, const BeamformingSolution& sol,
                    const SystemConfig& cfg, const EvalOptions& opts = {});

// Plain-text record of a solution: method, powers, beam entries.
std::string to_text(const BeamformingSolution& sol);

}  // namespace swipt
