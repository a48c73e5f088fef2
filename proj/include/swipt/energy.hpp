#pragma once

#include <cstdint>
#include <vector>

#include "swipt/config.hpp"

namespace swipt {

// Transmit waveform carried by the beams. Information beams always carry
// Gaussian symbols; the choice below controls the energy-beam symbols and how
// harvested power is averaged.
enum class Waveform {
  kGaussian,              // unit-variance Gaussian symbols on every beam
  kDeterministicSinusoid  // constant-envelope energy symbols, |s| = 1
};

// Rectifier transfer curve: DC output power for a given RF input power.
// Normalized so the output is exactly zero at zero input and approaches the
// saturation level Ms for large input.
double eh_transfer(double P_rf, const EhParams& p);

// Conversion efficiency eh_transfer(P)/P. Requires P > 0.
double rf_dc_efficiency(double P_rf, const EhParams& p);

// Symbol-averaged RF power collected by one energy user:
// rho * (sum_i |h^H w_i|^2 + sum_j |h^H v_j|^2). Identical for both
// waveforms because every symbol stream has unit second moment.
double received_rf_power(const CVec& h_E, double rho,
                         const std::vector<CVec>& W, const std::vector<CVec>& V);

// RF power for one symbol draw; s2_I / s2_E hold the squared symbol
// magnitudes for the information and energy beams.
double received_rf_power_inst(const CVec& h_E, double rho,
                              const std::vector<CVec>& W, const std::vector<CVec>& V,
                              const std::vector<double>& s2_I,
                              const std::vector<double>& s2_E);

// Average DC power over n_symbols random symbol draws, pushing each
// instantaneous RF power through the rectifier curve. With the deterministic
// sinusoid the energy-beam contribution is constant and only the information
// symbols are sampled. Deterministic for a fixed seed.
double harvested_dc_power(const CVec& h_E, double rho,
                          const std::vector<CVec>& W, const std::vector<CVec>& V,
                          const EhParams& p, Waveform wf, int n_symbols,
                          uint64_t seed);

}  // namespace swipt
