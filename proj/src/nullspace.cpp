#include "swipt/nullspace.hpp"

#include <Eigen/SVD>

namespace swipt {

CMat null_space_of(const CMat& A, int r) {
  const int M = int(A.cols());
  if (A.rows() < 1) throw ShapeError("matrix must have at least one row");
  if (r < 1 || r > M - 1) throw ConfigError("rank cut out of range");
  // Full right singular basis; singular values come out in descending order,
  // so the trailing columns span the least-energy directions.
  Eigen::JacobiSVD<CMat> svd(A, Eigen::ComputeFullV);
  return svd.matrixV().rightCols(M - r);
}

NullSpaceBasis build_bases(const ChannelSet& ch, int r_I, int r_E) {
  const int K_I = int(ch.H_I.rows());
  const int M = int(ch.H_I.cols());
  if (r_I < 0) r_I = K_I - 1;
  if (r_E < 0) r_E = K_I;
  if (r_I > M - 1 || r_E > M - 1 || r_E < 1 || r_I < 0)
    throw ConfigError("rank cut out of range");

  NullSpaceBasis ns;
  ns.r_I = r_I;
  ns.r_E = r_E;
  ns.N_I.reserve(size_t(K_I));
  for (int i = 0; i < K_I; ++i) {
    if (K_I == 1 || r_I == 0) {
      // Nothing to suppress: the whole space is available to the single user.
      ns.N_I.push_back(CMat::Identity(M, M));
      continue;
    }
    CMat others(K_I - 1, M);
    int row = 0;
    for (int k = 0; k < K_I; ++k)
      if (k != i) others.row(row++) = ch.H_I.row(k);
    ns.N_I.push_back(null_space_of(others, r_I));
  }
  ns.N_E = null_space_of(ch.H_I, r_E);
  return ns;
}

EquivalentChannels build_equivalents(const ChannelSet& ch, const NullSpaceBasis& ns) {
  const int K_I = int(ch.H_I.rows());
  const int K_E = int(ch.H_E.rows());
  const int M = int(ch.H_I.cols());
  if (int(ns.N_I.size()) != K_I)
    throw ShapeError("basis count must match the information user count");

  EquivalentChannels eq;
  eq.h_EI.assign(size_t(K_E), std::vector<CVec>(size_t(K_I)));
  eq.h_EE.resize(size_t(K_E));
  eq.h_II.resize(size_t(K_I));
  for (int l = 0; l < K_E; ++l) {
    const CVec he = ch.h_E(l);
    for (int i = 0; i < K_I; ++i)
      eq.h_EI[size_t(l)][size_t(i)] = ns.N_I[size_t(i)].adjoint() * he;
    eq.h_EE[size_t(l)] = ns.N_E.adjoint() * he;
  }
  for (int k = 0; k < K_I; ++k)
    eq.h_II[size_t(k)] = ns.N_I[size_t(k)].adjoint() * ch.h_I(k);

  eq.S_Ei.reserve(size_t(K_I));
  for (int i = 0; i < K_I; ++i) {
    const int n = int(ns.N_I[size_t(i)].cols());
    CMat S = CMat::Zero(n, n);
    for (int l = 0; l < K_E; ++l) {
      const CVec& v = eq.h_EI[size_t(l)][size_t(i)];
      S += v * v.adjoint();
    }
    eq.S_Ei.push_back(std::move(S));
  }
  {
    const int n = int(ns.N_E.cols());
    eq.S_E = CMat::Zero(n, n);
    for (int l = 0; l < K_E; ++l)
      eq.S_E += eq.h_EE[size_t(l)] * eq.h_EE[size_t(l)].adjoint();
  }
  eq.S = CMat::Zero(M, M);
  for (int l = 0; l < K_E; ++l) {
    const CVec he = ch.h_E(l);
    eq.S += he * he.adjoint();
  }
  return eq;
}

namespace {

Eigen::VectorXd hermitian_eigs_ascending(const CMat& S) {
  const double scale = S.norm();
  if ((S - S.adjoint()).norm() > 1e-10 * std::max(1.0, scale))
    throw DomainError("matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(S);
  return es.eigenvalues();
}

}  // namespace

InterlacingReport interlacing_check(const CMat& S_outer, const CMat& S_inner,
                                    double slack) {
  InterlacingReport rep;
  rep.outer_eigs = hermitian_eigs_ascending(S_outer);
  rep.inner_eigs = hermitian_eigs_ascending(S_inner);
  const int n_out = int(rep.outer_eigs.size());
  const int n_in = int(rep.inner_eigs.size());
  if (n_in > n_out)
    throw ShapeError("inner matrix cannot be larger than the outer one");
  const int d = n_out - n_in;
  for (int j = 0; j < n_in; ++j) {
    const bool low_ok = rep.outer_eigs(j) <= rep.inner_eigs(j) + slack;
    const bool high_ok = rep.inner_eigs(j) <= rep.outer_eigs(j + d) + slack;
    if (!low_ok || !high_ok) {
      rep.ok = false;
      rep.violations.push_back(j);
    }
  }
  return rep;
}

}  // namespace swipt
