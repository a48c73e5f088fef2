#include "swipt/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace swipt {

namespace {

constexpr double kNewtonTol = 1e-9;    // decrement^2 threshold for centering
constexpr int kNewtonCap = 60;         // Newton steps per stage
constexpr double kMuStage = 20.0;      // barrier growth factor
constexpr double kFeasMargin = 1e-9;   // strict feasibility margin, scaled units

// Internal normalized form: all constraints oriented as trace sums <= bound,
// each divided by its own magnitude scale, objective divided by a common
// scale. Solutions map back by undoing the scales.
struct Normalized {
  std::vector<int> dims;
  std::vector<CMat> C;                  // scaled objective
  std::vector<std::vector<CMat>> A;     // [constraint][block], scaled, <= sense
  std::vector<double> b;                // scaled bounds
  std::vector<double> con_scale;        // per-constraint divisor
  double obj_scale = 1.0;
  int m() const { return int(b.size()); }
  int nu() const {
    int s = m();
    for (int d : dims) s += d;
    return s;
  }
};

double herm_dot(const CMat& A, const CMat& B) {
  return A.cwiseProduct(B.transpose()).sum().real();  // Re trace(A B)
}

Normalized normalize(const SdpProblem& prob) {
  const int nb = int(prob.block_dims.size());
  if (nb == 0) throw ConfigError("problem needs at least one block");
  if (int(prob.C.size()) != nb)
    throw ShapeError("objective must provide one matrix per block");
  Normalized nm;
  nm.dims = prob.block_dims;
  for (int b = 0; b < nb; ++b) {
    const int d = prob.block_dims[size_t(b)];
    if (d < 1) throw ConfigError("block dimensions must be positive");
    const CMat& C = prob.C[size_t(b)];
    if (C.rows() != d || C.cols() != d)
      throw ShapeError("objective matrix dimension mismatch");
    if ((C - C.adjoint()).norm() > 1e-10 * std::max(1.0, C.norm()))
      throw DomainError("objective matrices must be Hermitian");
    nm.obj_scale = std::max(nm.obj_scale, C.norm());
  }
  nm.C.reserve(size_t(nb));
  for (int b = 0; b < nb; ++b) nm.C.push_back(prob.C[size_t(b)] / nm.obj_scale);

  for (const auto& con : prob.constraints) {
    if (int(con.A.size()) != nb)
      throw ShapeError("constraint must provide one matrix per block");
    const double sgn = con.sense == ConstraintSense::kLe ? 1.0 : -1.0;
    double scale = std::abs(con.bound);
    for (int b = 0; b < nb; ++b) {
      const CMat& A = con.A[size_t(b)];
      if (A.size() == 0) continue;
      const int d = prob.block_dims[size_t(b)];
      if (A.rows() != d || A.cols() != d)
        throw ShapeError("constraint matrix dimension mismatch");
      if ((A - A.adjoint()).norm() > 1e-10 * std::max(1.0, A.norm()))
        throw DomainError("constraint matrices must be Hermitian");
      scale = std::max(scale, A.norm());
    }
    if (scale <= 0.0) throw DomainError("constraint with no coefficients");
    std::vector<CMat> row;
    row.reserve(size_t(nb));
    for (int b = 0; b < nb; ++b) {
      const CMat& A = con.A[size_t(b)];
      const int d = prob.block_dims[size_t(b)];
      if (A.size() == 0)
        row.push_back(CMat::Zero(d, d));
      else
        row.push_back(sgn / scale * A);
    }
    nm.A.push_back(std::move(row));
    nm.b.push_back(sgn * con.bound / scale);
    nm.con_scale.push_back(scale);
  }
  return nm;
}

std::vector<double> slacks(const Normalized& nm, const std::vector<CMat>& X) {
  std::vector<double> s(static_cast<size_t>(nm.m()));
  for (int c = 0; c < nm.m(); ++c) {
    double lhs = 0.0;
    for (size_t b = 0; b < nm.dims.size(); ++b)
      lhs += herm_dot(nm.A[size_t(c)][b], X[b]);
    s[size_t(c)] = nm.b[size_t(c)] - lhs;
  }
  return s;
}

double objective_of(const Normalized& nm, const std::vector<CMat>& X) {
  double v = 0.0;
  for (size_t b = 0; b < nm.dims.size(); ++b) v += herm_dot(nm.C[b], X[b]);
  return v;
}

// Barrier value; +inf when outside the domain.
double barrier_value(const Normalized& nm, const std::vector<CMat>& X, double t) {
  double phi = -t * objective_of(nm, X);
  for (size_t b = 0; b < nm.dims.size(); ++b) {
    Eigen::LLT<CMat> llt(X[b]);
    if (llt.info() != Eigen::Success)
      return std::numeric_limits<double>::infinity();
    for (int i = 0; i < X[b].rows(); ++i)
      phi -= 2.0 * std::log(llt.matrixL()(i, i).real());
  }
  for (double s : slacks(nm, X)) {
    if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
    phi -= std::log(s);
  }
  return phi;
}

struct CenterResult {
  int newton_steps = 0;
  bool converged = false;
};

// Newton centering for min -t obj - sum logdet X - sum log s. The Hessian is
// block diagonal from the logdet terms plus one rank-one coupling term per
// constraint, so the Newton direction comes from a Woodbury solve with an
// m x m core instead of a dense system over all matrix entries.
CenterResult center(const Normalized& nm, std::vector<CMat>& X, double t) {
  CenterResult res;
  const int nb = int(nm.dims.size());
  const int m = nm.m();
  double last_dec2 = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kNewtonCap; ++it) {
    std::vector<CMat> Xinv(static_cast<size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<CMat> llt(X[size_t(b)]);
      if (llt.info() != Eigen::Success) return res;  // left the cone, bail out
      Xinv[size_t(b)] =
          llt.solve(CMat::Identity(nm.dims[size_t(b)], nm.dims[size_t(b)]));
    }
    const auto s = slacks(nm, X);
    for (double sc : s)
      if (!(sc > 0.0)) return res;

    // R = -grad phi
    std::vector<CMat> R(static_cast<size_t>(nb));
    for (int b = 0; b < nb; ++b) {
      CMat g = -t * nm.C[size_t(b)] - Xinv[size_t(b)];
      for (int c = 0; c < m; ++c)
        g += (1.0 / s[size_t(c)]) * nm.A[size_t(c)][size_t(b)];
      R[size_t(b)] = -g;
    }

    // Woodbury pieces: Y = X R X, core = diag(s^2) + M with
    // M_cc' = Re tr(A_c X A_c' X).
    std::vector<CMat> Y(static_cast<size_t>(nb));
    for (int b = 0; b < nb; ++b)
      Y[size_t(b)] = X[size_t(b)] * R[size_t(b)] * X[size_t(b)];
    Eigen::VectorXd u(m);
    std::vector<std::vector<CMat>> AX(static_cast<size_t>(m));
    for (int c = 0; c < m; ++c) {
      double dot = 0.0;
      AX[size_t(c)].resize(size_t(nb));
      for (int b = 0; b < nb; ++b) {
        dot += herm_dot(nm.A[size_t(c)][size_t(b)], Y[size_t(b)]);
        AX[size_t(c)][size_t(b)] =
            X[size_t(b)] * nm.A[size_t(c)][size_t(b)] * X[size_t(b)];
      }
      u(c) = dot;
    }
    Eigen::MatrixXd core(m, m);
    for (int c = 0; c < m; ++c)
      for (int c2 = 0; c2 <= c; ++c2) {
        double dot = 0.0;
        for (int b = 0; b < nb; ++b)
          dot += herm_dot(nm.A[size_t(c)][size_t(b)], AX[size_t(c2)][size_t(b)]);
        core(c, c2) = dot;
        core(c2, c) = dot;
      }
    for (int c = 0; c < m; ++c) core(c, c) += s[size_t(c)] * s[size_t(c)];
    const Eigen::VectorXd alpha = core.ldlt().solve(u);

    std::vector<CMat> D(static_cast<size_t>(nb));
    double dec2 = 0.0;
    for (int b = 0; b < nb; ++b) {
      CMat d = Y[size_t(b)];
      for (int c = 0; c < m; ++c) d -= alpha(c) * AX[size_t(c)][size_t(b)];
      // Symmetrize to keep roundoff from drifting the iterate off Hermitian.
      D[size_t(b)] = 0.5 * (d + d.adjoint());
      dec2 += herm_dot(R[size_t(b)], D[size_t(b)]);
    }
    last_dec2 = dec2;
    if (!(dec2 > 0.0)) {
      res.converged = true;  // gradient at the numerical floor
      return res;
    }
    const bool final_step = dec2 / 2.0 <= kNewtonTol;

    // Step length: stay inside the slack polytope, then backtrack on the
    // barrier value until it decreases enough.
    double amax = 1.0;
    for (int c = 0; c < m; ++c) {
      double dd = 0.0;
      for (int b = 0; b < nb; ++b)
        dd += herm_dot(nm.A[size_t(c)][size_t(b)], D[size_t(b)]);
      if (dd > 0.0) amax = std::min(amax, 0.99 * s[size_t(c)] / dd);
    }
    const double phi0 = barrier_value(nm, X, t);
    double a = amax;
    bool stepped = false;
    for (int ls = 0; ls < 60; ++ls) {
      std::vector<CMat> Xn(static_cast<size_t>(nb));
      for (int b = 0; b < nb; ++b) Xn[size_t(b)] = X[size_t(b)] + a * D[size_t(b)];
      const double phi1 = barrier_value(nm, Xn, t);
      if (phi1 <= phi0 - 0.25 * a * dec2) {
        X = std::move(Xn);
        stepped = true;
        break;
      }
      a *= 0.5;
    }
    ++res.newton_steps;
    if (final_step) {
      res.converged = true;
      return res;
    }
    if (!stepped) break;  // no progress possible at this scale
  }
  // A point that is nearly centered still yields usable multipliers.
  res.converged = last_dec2 / 2.0 <= 1e-6;
  return res;
}

struct BarrierOutcome {
  double t_final = 0.0;  // last parameter with a properly centered point
  int newton_steps = 0;
  int stages = 0;
  bool reached_stop = false;
};

// Follows the central path until stop(t, obj) says the point is good enough.
// On a centering failure the previous (centered) iterate is restored.
template <typename StopFn>
BarrierOutcome follow_path(const Normalized& nm, std::vector<CMat>& X,
                           int max_stages, StopFn stop,
                           std::vector<SdpIterInfo>* trace) {
  BarrierOutcome out;
  const double nu = double(nm.nu());
  double obj0 = objective_of(nm, X);
  double t = nu / std::max(0.25 * (1.0 + std::abs(obj0)), 1e-6);
  for (int stage = 0; stage < max_stages; ++stage) {
    std::vector<CMat> backup = X;
    const auto cr = center(nm, X, t);
    out.newton_steps += cr.newton_steps;
    ++out.stages;
    if (!cr.converged) {
      X = std::move(backup);
      return out;
    }
    const double obj = objective_of(nm, X);
    if (trace) {
      SdpIterInfo info;
      info.t = t;
      info.objective = obj * nm.obj_scale;
      info.duality_gap = nu / t * nm.obj_scale;
      info.dual_objective = info.objective + info.duality_gap;
      trace->push_back(info);
    }
    out.t_final = t;
    if (stop(t, obj)) {
      out.reached_stop = true;
      return out;
    }
    t *= kMuStage;
  }
  return out;
}

// Initial point attempt: uniformly scaled identity blocks. Returns true when
// every constraint holds with a healthy strict margin.
bool identity_start(const Normalized& nm, std::vector<CMat>& X) {
  int total_dim = 0;
  for (int d : nm.dims) total_dim += d;
  for (double factor : {1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0}) {
    std::vector<CMat> cand;
    cand.reserve(nm.dims.size());
    for (int d : nm.dims)
      cand.push_back(factor / double(total_dim) * CMat::Identity(d, d));
    bool ok = true;
    for (double s : slacks(nm, cand))
      if (!(s > 1e-6)) {
        ok = false;
        break;
      }
    if (ok) {
      X = std::move(cand);
      return true;
    }
  }
  return false;
}

// Phase-one search for a strictly feasible point: append a scalar block T
// whose value shifts every constraint, maximize -tau with tau = T - 1, and
// stop as soon as the real constraints hold strictly. Returns kOptimal with
// X filled on success, kInfeasible when the certified optimum keeps tau >= 0.
SdpStatus phase_one(const Normalized& nm, std::vector<CMat>& X, int max_stages,
                    int* newton_steps) {
  const int nb = int(nm.dims.size());
  Normalized ph;
  ph.dims = nm.dims;
  ph.dims.push_back(1);
  ph.obj_scale = 1.0;
  for (int b = 0; b < nb; ++b)
    ph.C.push_back(CMat::Zero(nm.dims[size_t(b)], nm.dims[size_t(b)]));
  ph.C.push_back(-CMat::Identity(1, 1));
  for (int c = 0; c < nm.m(); ++c) {
    auto row = nm.A[size_t(c)];
    row.push_back(-CMat::Identity(1, 1));
    ph.A.push_back(std::move(row));
    ph.b.push_back(nm.b[size_t(c)] - 1.0);
    ph.con_scale.push_back(1.0);
  }
  // Large trace caps keep the search bounded even without a power budget.
  const double cap = 1e8;
  for (int b = 0; b <= nb; ++b) {
    std::vector<CMat> row;
    for (int b2 = 0; b2 <= nb; ++b2) {
      const int d = ph.dims[size_t(b2)];
      row.push_back(b2 == b ? CMat(CMat::Identity(d, d)) : CMat(CMat::Zero(d, d)));
    }
    ph.A.push_back(std::move(row));
    ph.b.push_back(cap);
    ph.con_scale.push_back(1.0);
  }

  int total_dim = 0;
  for (int d : nm.dims) total_dim += d;
  std::vector<CMat> Xp;
  for (int d : nm.dims)
    Xp.push_back(1e-3 / double(total_dim) * CMat::Identity(d, d));
  double worst = 0.0;
  {
    std::vector<CMat> probe(Xp.begin(), Xp.end());
    // Violation of the real constraints at the starting blocks.
    for (int c = 0; c < nm.m(); ++c) {
      double lhs = 0.0;
      for (int b = 0; b < nb; ++b)
        lhs += herm_dot(nm.A[size_t(c)][size_t(b)], probe[size_t(b)]);
      worst = std::max(worst, lhs - nm.b[size_t(c)]);
    }
  }
  Xp.push_back((worst + 2.0) * CMat::Identity(1, 1));  // tau0 = worst + 1

  bool found = false;
  auto stop = [&](double t, double obj) {
    const double tau = Xp.back()(0, 0).real() - 1.0;
    if (tau < -1e-7) {
      found = true;
      return true;
    }
    // obj is the value of -T, so the achievable -tau is bounded above by
    // 1 + obj + gap; once that bound sinks below the strict margin no
    // feasible point exists.
    const double gap = double(ph.nu()) / t;
    return 1.0 + obj + gap < kFeasMargin;
  };
  const auto out = follow_path(ph, Xp, max_stages, stop, nullptr);
  if (newton_steps) *newton_steps += out.newton_steps;
  if (found) {
    X.assign(Xp.begin(), Xp.end() - 1);
    return SdpStatus::kOptimal;
  }
  // Only a reached certificate justifies the infeasible verdict; anything
  // else is a numerical failure of the search itself.
  return out.reached_stop ? SdpStatus::kInfeasible : SdpStatus::kMaxIter;
}

}  // namespace

SdpSolution solve(const SdpProblem& prob, const SdpOptions& opts) {
  const Normalized nm = normalize(prob);
  if (nm.m() == 0) throw ConfigError("problem needs at least one constraint");

  SdpSolution sol;
  std::vector<CMat> X;
  if (!identity_start(nm, X)) {
    const SdpStatus st = phase_one(nm, X, opts.max_iter, &sol.iterations);
    if (st == SdpStatus::kInfeasible) {
      sol.status = SdpStatus::kInfeasible;
      sol.message = "no strictly feasible point";
      return sol;
    }
    if (st == SdpStatus::kMaxIter) {
      sol.status = SdpStatus::kMaxIter;
      sol.message = "phase one search did not converge";
      return sol;
    }
  }

  const double nu = double(nm.nu());
  auto stop = [&](double t, double obj) {
    // Certified gap at an (approximately) centered point is nu/t; compare in
    // original units with half the tolerance so the final check has margin.
    const double gap = nu / t * nm.obj_scale;
    const bool gap_ok = gap <= 0.5 * opts.tol * (1.0 + std::abs(obj * nm.obj_scale));
    // Inactive boundary variables decay like scale/t; push t far enough that
    // they clear the tolerance too, but no further (extreme t defeats
    // double-precision centering).
    const bool slack_ok = nm.obj_scale / t <= opts.tol;
    return gap_ok && slack_ok;
  };
  const auto out = follow_path(nm, X, opts.max_iter, stop, opts.trace);
  sol.iterations += out.newton_steps;
  if (out.t_final == 0.0) {
    sol.status = SdpStatus::kMaxIter;
    sol.message = "centering failed at the initial barrier stage";
    sol.X = X;
    sol.duality_gap = std::numeric_limits<double>::infinity();
    return sol;
  }

  const double t = out.t_final;
  sol.X = X;
  sol.objective = objective_of(nm, X) * nm.obj_scale;

  // Multipliers from the stationarity condition at the final center,
  //   sum_c mu_c A_c = C + X^-1 / t,
  // solved as a small least-squares fit over the constraint matrices. The
  // active slacks themselves are of order 1/t and carry absolute roundoff of
  // the same size, so reading 1/(t s) directly would be noise.
  {
    const int m = nm.m();
    const int nb = int(nm.dims.size());
    std::vector<CMat> T(static_cast<size_t>(nb));
    bool invertible = true;
    for (int b = 0; b < nb; ++b) {
      Eigen::LLT<CMat> llt(X[size_t(b)]);
      if (llt.info() != Eigen::Success) {
        invertible = false;
        break;
      }
      const int d = nm.dims[size_t(b)];
      T[size_t(b)] =
          nm.C[size_t(b)] + llt.solve(CMat::Identity(d, d)) / t;
    }
    sol.dual_values.assign(size_t(m), 0.0);
    if (invertible) {
      Eigen::MatrixXd G(m, m);
      Eigen::VectorXd rhs(m);
      for (int c = 0; c < m; ++c) {
        double r = 0.0;
        for (int b = 0; b < nb; ++b)
          r += herm_dot(nm.A[size_t(c)][size_t(b)], T[size_t(b)]);
        rhs(c) = r;
        for (int c2 = 0; c2 <= c; ++c2) {
          double g = 0.0;
          for (int b = 0; b < nb; ++b)
            g += herm_dot(nm.A[size_t(c)][size_t(b)],
                          nm.A[size_t(c2)][size_t(b)]);
          G(c, c2) = g;
          G(c2, c) = g;
        }
      }
      const Eigen::VectorXd mu = G.ldlt().solve(rhs);
      for (int c = 0; c < m; ++c)
        sol.dual_values[size_t(c)] = std::max(0.0, mu(c)) * nm.obj_scale /
                                     nm.con_scale[size_t(c)];
    }
  }
  // nu/t is the certified bound at a centered point. The multiplier-weighted
  // bound sum(lambda b) - obj is NOT used: at large t the centering residual
  // enters it multiplied by the barrier curvature and swamps the true gap.
  sol.duality_gap = nu / t * nm.obj_scale;
  sol.dual_objective = sol.objective + sol.duality_gap;

  const double target = opts.tol * (1.0 + std::abs(sol.objective));
  if (sol.duality_gap <= target) {
    sol.status = SdpStatus::kOptimal;
  } else {
    sol.status = SdpStatus::kMaxIter;
    sol.message = "barrier stages exhausted before reaching the gap target";
  }
  return sol;
}

bool feasibility_probe(const SdpProblem& prob) {
  const Normalized nm = normalize(prob);
  if (nm.m() == 0) return true;
  std::vector<CMat> X;
  if (identity_start(nm, X)) return true;
  return phase_one(nm, X, 100, nullptr) == SdpStatus::kOptimal;
}

Rank1Extraction extract_rank1(const CMat& X) {
  if (X.rows() != X.cols()) throw ShapeError("matrix must be square");
  Rank1Extraction out;
  const int n = int(X.rows());
  if ((X - X.adjoint()).norm() > 1e-8 * std::max(1.0, X.norm()))
    throw DomainError("matrix must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(X);
  const auto& ev = es.eigenvalues();  // ascending
  const double top = ev(n - 1);
  if (!(top > 0.0) || top <= 1e-300) {
    out.b = CVec::Zero(n);
    out.residual_ratio = 0.0;
    return out;
  }
  CVec u = es.eigenvectors().col(n - 1);
  // Deterministic global phase: first entry of largest magnitude made real
  // positive.
  int jmax = 0;
  double best = -1.0;
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(u(j));
    if (a > best + 1e-15) {
      best = a;
      jmax = j;
    }
  }
  if (best > 0.0) u *= std::conj(u(jmax)) / std::abs(u(jmax));
  out.b = std::sqrt(top) * u;
  const double second = n >= 2 ? std::max(ev(n - 2), 0.0) : 0.0;
  out.residual_ratio = second / top;
  return out;
}

void dump_problem(const SdpProblem& prob, std::ostream& os) {
  os << "blocks " << prob.block_dims.size() << "\n";
  for (int d : prob.block_dims) os << d << "\n";
  auto put = [&os](const CMat& A) {
    for (Eigen::Index r = 0; r < A.rows(); ++r)
      for (Eigen::Index c = 0; c < A.cols(); ++c)
        os << A(r, c).real() << " " << A(r, c).imag() << "\n";
  };
  os << "objective\n";
  for (const auto& C : prob.C) put(C);
  os << "constraints " << prob.constraints.size() << "\n";
  for (const auto& con : prob.constraints) {
    os << (con.sense == ConstraintSense::kLe ? "le " : "ge ") << con.bound
       << "\n";
    for (const auto& A : con.A) {
      os << (A.size() == 0 ? "zero" : "dense") << "\n";
      if (A.size() != 0) put(A);
    }
  }
}

}  // namespace swipt
