#include "swipt/channel.hpp"

#include <cmath>

#include "swipt/rng.hpp"

namespace swipt {

CVec steering_vector(int M, double phi) {
  if (M < 1) throw ConfigError("antenna count must be positive");
  CVec a(M);
  const double scale = 1.0 / std::sqrt(double(M));
  for (int m = 0; m < M; ++m) {
    const double arg = double(m) * M_PI * std::sin(phi);
    a(m) = cxd(std::cos(arg), std::sin(arg)) * scale;
  }
  return a;
}

namespace {

// Builds one user row: sqrt(kappa/(1+kappa)) steering + sqrt(1/(1+kappa)) scatter.
// kappa = infinity collapses to the steering component alone.
Eigen::RowVectorXcd make_row(int M, double kappa, double phi, Rng& rng) {
  const CVec los = steering_vector(M, phi);
  double w_los, w_sc;
  if (std::isinf(kappa)) {
    w_los = 1.0;
    w_sc = 0.0;
  } else {
    w_los = std::sqrt(kappa / (1.0 + kappa));
    w_sc = std::sqrt(1.0 / (1.0 + kappa));
  }
  Eigen::RowVectorXcd row(M);
  for (int m = 0; m < M; ++m) {
    // Scatter entries are always drawn so that the stream position does not
    // depend on kappa; pure line of sight just weights them by zero.
    const cxd g = rng.cnormal();
    row(m) = std::conj(w_los * los(m) + w_sc * g);
  }
  return row;
}

}  // namespace

ChannelSet generate_channels(const SystemConfig& cfg, uint64_t seed) {
  cfg.validate();
  ChannelSet ch;
  ch.H_I.resize(cfg.K_I, cfg.M);
  ch.H_E.resize(cfg.K_E, cfg.M);
  ch.rho_I.resize(cfg.K_I);
  ch.rho_E.resize(cfg.K_E);
  ch.aod_I.resize(cfg.K_I);
  ch.aod_E.resize(cfg.K_E);

  Rng angle_rng(Rng::derive(seed, 0));
  for (int k = 0; k < cfg.K_I; ++k)
    ch.aod_I(k) = cfg.aod_I.empty() ? (angle_rng.uniform() - 0.5) * M_PI
                                    : cfg.aod_I[size_t(k)];
  for (int l = 0; l < cfg.K_E; ++l)
    ch.aod_E(l) = cfg.aod_E.empty() ? (angle_rng.uniform() - 0.5) * M_PI
                                    : cfg.aod_E[size_t(l)];

  for (int k = 0; k < cfg.K_I; ++k) {
    Rng rng(Rng::derive(seed, 1 + uint64_t(k)));
    ch.H_I.row(k) = make_row(cfg.M, cfg.kappa_I_of(k), ch.aod_I(k), rng);
    ch.rho_I(k) = path_loss(cfg.L_ref_dB, cfg.d_I, cfg.alpha_I);
  }
  for (int l = 0; l < cfg.K_E; ++l) {
    Rng rng(Rng::derive(seed, 1 + uint64_t(cfg.K_I) + uint64_t(l)));
    ch.H_E.row(l) = make_row(cfg.M, cfg.kappa_E_of(l), ch.aod_E(l), rng);
    ch.rho_E(l) = path_loss(cfg.L_ref_dB, cfg.d_E, cfg.alpha_E);
  }
  return ch;
}

ChannelSet corrupt_csi(const ChannelSet& ch, const CsiErrorSpec& err, uint64_t seed) {
  if (err.rho < 0.0 || err.rho > 1.0)
    throw ConfigError("error weight must lie in [0,1]");
  if (err.sigma_H_sq < 0.0) throw ConfigError("error variance must be nonnegative");
  ChannelSet out = ch;
  if (err.rho == 0.0) return out;
  const double w_true = std::sqrt(1.0 - err.rho * err.rho);
  const double w_err = err.rho * std::sqrt(err.sigma_H_sq);
  Rng rng_i(Rng::derive(seed, 101));
  Rng rng_e(Rng::derive(seed, 102));
  for (Eigen::Index r = 0; r < out.H_I.rows(); ++r)
    for (Eigen::Index c = 0; c < out.H_I.cols(); ++c)
      out.H_I(r, c) = w_true * ch.H_I(r, c) + w_err * rng_i.cnormal();
  for (Eigen::Index r = 0; r < out.H_E.rows(); ++r)
    for (Eigen::Index c = 0; c < out.H_E.cols(); ++c)
      out.H_E(r, c) = w_true * ch.H_E(r, c) + w_err * rng_e.cnormal();
  return out;
}

}  // namespace swipt
