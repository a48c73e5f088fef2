#pragma once

#include <vector>

#include "swipt/channel.hpp"

namespace swipt {

// Orthonormal subspace bases used to confine the beams. N_I[i] spans the
// space free of every information user except i, so beams sent through it
// cause no inter-user interference; N_E spans the space free of all
// information users, so energy beams through it reach them not at all.
struct NullSpaceBasis {
  std::vector<CMat> N_I;  // K_I matrices, each M x (M - r_I)
  CMat N_E;               // M x (M - r_E)
  int r_I = 0;
  int r_E = 0;
};

// Channels and quadratic forms expressed inside the reduced spaces.
struct EquivalentChannels {
  std::vector<std::vector<CVec>> h_EI;  // [l][i]: energy user l through N_I[i]
  std::vector<CVec> h_EE;               // [l]: energy user l through N_E
  std::vector<CVec> h_II;               // [k]: information user k through N_I[k]
  std::vector<CMat> S_Ei;               // [i]: sum_l h_EI[l][i] h_EI[l][i]^H
  CMat S_E;                             // sum_l h_EE[l] h_EE[l]^H
  CMat S;                               // sum_l h_E[l] h_E[l]^H, full space
};

// Returns the last M - r right singular vectors of A (k x M), an orthonormal
// basis of the subspace discarded by a rank-r cut. For r >= rank(A) the
// product A * basis vanishes; for smaller r a residual remains by design.
CMat null_space_of(const CMat& A, int r);

// Builds the per-user bases. r_I / r_E < 0 select the smallest cuts that
// still guarantee annihilation: r_I = K_I - 1 and r_E = K_I. Smaller values
// are accepted for sweep studies over deliberately leaky bases.
NullSpaceBasis build_bases(const ChannelSet& ch, int r_I = -1, int r_E = -1);

EquivalentChannels build_equivalents(const ChannelSet& ch, const NullSpaceBasis& ns);

struct InterlacingReport {
  bool ok = true;
  std::vector<int> violations;   // 0-based indices j failing the sandwich
  Eigen::VectorXd outer_eigs;    // eigenvalues of the larger matrix, ascending
  Eigen::VectorXd inner_eigs;    // eigenvalues of the smaller one, ascending
};

// Checks the Cauchy sandwich between the spectra of a Hermitian matrix and a
// principal-type compression of it: with d = dim(outer) - dim(inner),
// outer[j] <= inner[j] <= outer[j + d] for every j, up to an absolute slack.
InterlacingReport interlacing_check(const CMat& S_outer, const CMat& S_inner,
                                    double slack = 1e-9);

}  // namespace swipt
