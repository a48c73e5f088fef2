#include "swipt/energy.hpp"

#include <cmath>

#include "swipt/rng.hpp"

namespace swipt {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Per-beam received powers |h^H w|^2 for one user.
std::vector<double> beam_gains(const CVec& h, const std::vector<CVec>& beams) {
  std::vector<double> g;
  g.reserve(beams.size());
  for (const auto& w : beams) {
    if (w.size() != h.size())
      throw ShapeError("beam length must match the channel dimension");
    g.push_back(std::norm(cxd(h.adjoint() * w)));
  }
  return g;
}

}  // namespace

double eh_transfer(double P_rf, const EhParams& p) {
  if (P_rf < 0.0) throw DomainError("RF input power must be nonnegative");
  // f(P) = (Ms/X) [sigmoid(a(P-b)) - sigmoid(-ab)], X = exp(ab)/(1+exp(ab)).
  // Writing both terms through the same sigmoid makes f(0) cancel exactly.
  const double ab = p.a * p.b;
  const double X = std::exp(ab) / (1.0 + std::exp(ab));
  return p.Ms / X * (sigmoid(p.a * (P_rf - p.b)) - sigmoid(-ab));
}

double rf_dc_efficiency(double P_rf, const EhParams& p) {
  if (!(P_rf > 0.0)) throw DomainError("efficiency needs a positive input power");
  return eh_transfer(P_rf, p) / P_rf;
}

double received_rf_power(const CVec& h_E, double rho,
                         const std::vector<CVec>& W, const std::vector<CVec>& V) {
  double sum = 0.0;
  for (double g : beam_gains(h_E, W)) sum += g;
  for (double g : beam_gains(h_E, V)) sum += g;
  return rho * sum;
}

double received_rf_power_inst(const CVec& h_E, double rho,
                              const std::vector<CVec>& W, const std::vector<CVec>& V,
                              const std::vector<double>& s2_I,
                              const std::vector<double>& s2_E) {
  if (s2_I.size() != W.size() || s2_E.size() != V.size())
    throw ShapeError("symbol magnitude lists must match the beam counts");
  double sum = 0.0;
  const auto gw = beam_gains(h_E, W);
  const auto gv = beam_gains(h_E, V);
  for (size_t i = 0; i < gw.size(); ++i) sum += gw[i] * s2_I[i];
  for (size_t j = 0; j < gv.size(); ++j) sum += gv[j] * s2_E[j];
  return rho * sum;
}

double harvested_dc_power(const CVec& h_E, double rho,
                          const std::vector<CVec>& W, const std::vector<CVec>& V,
                          const EhParams& p, Waveform wf, int n_symbols,
                          uint64_t seed) {
  if (n_symbols < 1) throw ConfigError("symbol count must be positive");
  const auto gw = beam_gains(h_E, W);
  const auto gv = beam_gains(h_E, V);
  double eb_const = 0.0;
  if (wf == Waveform::kDeterministicSinusoid)
    for (double g : gv) eb_const += g;  // |s| = 1 on every energy beam

  Rng rng(seed);
  double acc = 0.0;
  for (int n = 0; n < n_symbols; ++n) {
    double pw = eb_const;
    for (double g : gw) pw += g * rng.exponential();
    if (wf == Waveform::kGaussian)
      for (double g : gv) pw += g * rng.exponential();
    acc += eh_transfer(rho * pw, p);
  }
  return acc / double(n_symbols);
}

}  // namespace swipt
