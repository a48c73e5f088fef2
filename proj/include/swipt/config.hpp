#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace swipt {

using cxd = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Invalid numeric configuration (counts, powers, exponents out of range).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension mismatch between matrices or vectors handed to an operation.
struct ShapeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input outside an operation's mathematical domain (negative power, etc).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rectifier transfer curve parameters. The curve saturates at Ms and turns on
// around input power b; a controls the steepness of the transition.
struct EhParams {
  double a = 150.0;   // steepness [1/W]
  double b = 0.024;   // turn-on threshold [W]
  double Ms = 0.024;  // saturation level [W]
};

// Channel estimation error model: H_est = sqrt(1-rho^2) H + rho H_n with
// independent CN(0, sigma_H_sq) entries in H_n. rho = 0 is perfect knowledge.
struct CsiErrorSpec {
  double rho = 0.0;
  double sigma_H_sq = 1.0;
};

constexpr double kKappaPureLos = std::numeric_limits<double>::infinity();

struct SystemConfig {
  int M = 16;    // transmit antennas
  int K_I = 2;   // information users
  int K_E = 2;   // energy users
  double P_max = 2.0;   // transmit power budget [W]
  double C_thre = 8.0;  // per-user capacity requirement [bits/s/Hz]
  double sigma0_sq = 3.9810717055349725e-12;  // receiver noise power [W]

  // Large-scale propagation: reference loss at 1 m plus distance exponent,
  // separate values for the two user classes.
  double d_I = 50.0;
  double d_E = 5.0;
  double alpha_I = 3.2;
  double alpha_E = 2.2;
  double L_ref_dB = 30.0;

  // Rician factors; empty vectors broadcast kappa_default to every user.
  // kKappaPureLos selects the deterministic line-of-sight-only channel.
  double kappa_default = 0.0;
  std::vector<double> kappa_I;
  std::vector<double> kappa_E;

  // Departure angles [rad]; empty means drawn uniformly on (-pi/2, pi/2).
  std::vector<double> aod_I;
  std::vector<double> aod_E;

  EhParams eh;

  double kappa_I_of(int k) const;
  double kappa_E_of(int l) const;
  void validate() const;  // throws ConfigError
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);  // 0 maps to -infinity

// Large-scale power gain 10^(-L_ref_dB/10) * d^(-alpha).
double path_loss(double L_ref_dB, double d, double alpha);

// SINR that a capacity requirement translates to: 2^C_thre - 1.
double snr_threshold(double C_thre);

}  // namespace swipt
