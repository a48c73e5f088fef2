#include "swipt/complexity.hpp"

#include <cmath>

namespace swipt {

namespace {

double p35(double x) { return x * x * x * std::sqrt(x); }  // x^3.5
double cube(double x) { return x * x * x; }

}  // namespace

double complexity_of(Method m, const ComplexityDims& dims) {
  const double M = dims.M;
  const double KI = dims.K_I;
  const double KE = dims.K_E;
  const double rI = dims.r_I >= 0 ? dims.r_I : dims.K_I - 1;
  const double rE = dims.r_E >= 0 ? dims.r_E : dims.K_I;
  if (dims.M < 1 || dims.K_I < 1 || dims.K_E < 1 || M - rI < 1 || M - rE < 1)
    throw ConfigError("complexity model needs positive dimensions");

  switch (m) {
    case Method::kNullspaceSdr:
      // reduced SDP + per-user bases + equivalent-channel products
      return p35(KI) * p35(M - rI) + KI * cube(M - rI) + KI * KE * cube(M) +
             KI * M * (KI - 1) * (KI - 1) - KI * KE * M * M * rI;
    case Method::kNullspaceSdrEnergyBeam:
      // adds the energy block cone and its spectral factorization
      return p35(KI) * p35(M - rI) + p35(M - rE) + KI * cube(M - rI) +
             cube(M - rE) + KI * KE * cube(M) + KI * M * (KI - 1) * (KI - 1) +
             M * KI * KI - KI * KE * M * M * rI;
    case Method::kClosedForm:
      // one spectral factorization + matched filters, no SDP
      return cube(M - rE) + KI * M * M * (M - rI) +
             KI * M * (KI - 1) * (KI - 1) + M * KI * KI;
    case Method::kFullSdr:
      return (p35(KI) + 1.0) * p35(M) + (KI + 1.0) * cube(M);
    case Method::kFullSdrNoEnergyBeam:
      return p35(KI) * p35(M) + KI * cube(M);
  }
  throw ConfigError("unknown method");
}

double reduction_percent(Method cheap, Method costly, const ComplexityDims& dims) {
  const double a = complexity_of(cheap, dims);
  const double b = complexity_of(costly, dims);
  if (!(b > 0.0)) throw DomainError("reference cost must be positive");
  return 100.0 * (1.0 - a / b);
}

}  // namespace swipt
