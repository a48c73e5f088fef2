#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "swipt/config.hpp"

namespace swipt {

enum class ConstraintSense { kLe, kGe };

// One linear trace constraint sum_b trace(A[b] X_b) <= bound (or >=).
// A[b] may be empty (0x0) when block b does not appear.
struct SdpConstraint {
  std::vector<CMat> A;
  ConstraintSense sense = ConstraintSense::kLe;
  double bound = 0.0;
};

// maximize sum_b trace(C[b] X_b) over Hermitian X_b >= 0 subject to the
// linear trace constraints. All C[b] and A[b] must be Hermitian.
struct SdpProblem {
  std::vector<int> block_dims;
  std::vector<CMat> C;
  std::vector<SdpConstraint> constraints;
};

enum class SdpStatus { kOptimal, kInfeasible, kMaxIter };

struct SdpIterInfo {
  double t = 0;          // barrier parameter
  double objective = 0;  // primal value at this stage
  double dual_objective = 0;
  double duality_gap = 0;
};

struct SdpSolution {
  SdpStatus status = SdpStatus::kMaxIter;
  std::vector<CMat> X;
  double objective = 0.0;
  double dual_objective = 0.0;
  double duality_gap = 0.0;
  std::vector<double> dual_values;  // multiplier per constraint, <= orientation
  int iterations = 0;               // Newton steps over the whole path
  std::string message;
};

struct SdpOptions {
  double tol = 1e-7;   // duality gap target, relative to 1 + |objective|
  int max_iter = 400;  // cap on barrier stages
  std::vector<SdpIterInfo>* trace = nullptr;  // optional per-stage record
};

// Path-following barrier method. Every iterate stays strictly feasible, so
// constraint violations at the reported solution are zero up to roundoff;
// kInfeasible means the phase-one search could not find a strictly feasible
// point. Requires at least one constraint (the problems of interest always
// carry a power budget).
SdpSolution solve(const SdpProblem& prob, const SdpOptions& opts = {});

// True when the constraint system admits a strictly feasible point. A
// constraint-free problem is trivially feasible. The search confines blocks
// to a very large trace ball, which is where any solution of interest lives.
bool feasibility_probe(const SdpProblem& prob);

struct Rank1Extraction {
  CVec b;                       // sqrt(top eigenvalue) times top eigenvector
  double residual_ratio = 0.0;  // second eigenvalue over top eigenvalue
};

// Dominant eigenpair factor of a Hermitian PSD matrix. The global phase is
// fixed by making the first entry of largest magnitude real positive, so the
// result is deterministic. A numerically zero matrix yields a zero vector.
Rank1Extraction extract_rank1(const CMat& X);

// Plain-text dump of a problem, one matrix entry per line as "re im".
void dump_problem(const SdpProblem& prob, std::ostream& os);

}  // namespace swipt
