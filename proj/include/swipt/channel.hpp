#pragma once

#include <cstdint>

#include "swipt/config.hpp"

namespace swipt {

// One narrowband downlink channel realization. Rows of H_I and H_E are the
// conjugate-transposed per-user channel vectors, so H_I * X evaluates every
// information user's h^H X at once. Small-scale fading is kept normalized;
// the large-scale gains rho_I / rho_E are stored separately and applied where
// link budgets need them.
struct ChannelSet {
  CMat H_I;  // K_I x M, row k is h_I[k]^H
  CMat H_E;  // K_E x M, row l is h_E[l]^H
  Eigen::VectorXd rho_I;  // large-scale power gains, per information user
  Eigen::VectorXd rho_E;  // per energy user
  Eigen::VectorXd aod_I;  // departure angles actually used [rad]
  Eigen::VectorXd aod_E;

  CVec h_I(int k) const { return H_I.row(k).adjoint(); }
  CVec h_E(int l) const { return H_E.row(l).adjoint(); }
};

// Unit-norm uniform linear array response at half-wavelength spacing:
// entry m is exp(i m pi sin(phi)) / sqrt(M).
CVec steering_vector(int M, double phi);

// Draws a channel realization. Per-user rows mix the deterministic steering
// component with CN(0, I) scatter according to the user's Rician factor; the
// same (cfg, seed) pair always produces the identical ChannelSet.
ChannelSet generate_channels(const SystemConfig& cfg, uint64_t seed);

// Imperfect-knowledge copy: rows become sqrt(1-rho^2) H + rho H_n with fresh
// CN(0, sigma_H_sq) entries. Large-scale gains and angles are kept.
ChannelSet corrupt_csi(const ChannelSet& ch, const CsiErrorSpec& err, uint64_t seed);

}  // namespace swipt
