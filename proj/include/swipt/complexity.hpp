#pragma once

#include "swipt/beamforming.hpp"

namespace swipt {

struct ComplexityDims {
  int M = 16;
  int K_I = 2;
  int K_E = 2;
  int r_I = -1;  // negative selects the guaranteed defaults K_I - 1 / K_I
  int r_E = -1;
};

// Leading-order arithmetic cost model of one design, unit constants. SDP
// terms enter as x^3.5 in the cone dimension, spectral and product terms as
// cubes; the null-space variants subtract the work the reduced bases avoid.
double complexity_of(Method m, const ComplexityDims& dims);

// Cost reduction of `cheap` relative to `costly` in percent:
// 100 (1 - cost_cheap / cost_costly).
double reduction_percent(Method cheap, Method costly, const ComplexityDims& dims);

}  // namespace swipt
