#include "doctest.h"

#include <cmath>

#include "swipt/complexity.hpp"

using namespace swipt;

namespace {

double round2(double x) { return std::round(x * 100.0) / 100.0; }

}  // namespace

TEST_CASE("closed-form cost at the small reference dimensions is exact") {
  ComplexityDims d;
  d.M = 8;
  d.K_I = 2;
  d.K_E = 2;
  // (M-r_E)^3 + K_I M^2 (M-r_I) + K_I M (K_I-1)^2 + M K_I^2
  // = 216 + 896 + 16 + 32 with the default ranks r_I=1, r_E=2.
  CHECK(complexity_of(Method::kClosedForm, d) == 1160.0);
}

TEST_CASE("cost reductions of the closed form, small and large setups") {
  ComplexityDims small;
  small.M = 8;
  small.K_I = 2;
  small.K_E = 2;
  ComplexityDims large;
  large.M = 16;
  large.K_I = 4;
  large.K_E = 4;

  // Rounded to two decimals these are the published reduction percentages.
  CHECK(round2(reduction_percent(Method::kClosedForm,
                                 Method::kNullspaceSdrEnergyBeam, small)) ==
        91.43);
  CHECK(round2(reduction_percent(Method::kClosedForm,
                                 Method::kNullspaceSdrEnergyBeam, large)) ==
        98.54);
  CHECK(round2(reduction_percent(Method::kClosedForm, Method::kFullSdr,
                                 small)) == 94.01);
  CHECK(round2(reduction_percent(Method::kClosedForm, Method::kFullSdr,
                                 large)) == 99.26);
  CHECK(round2(reduction_percent(Method::kClosedForm,
                                 Method::kFullSdrNoEnergyBeam, small)) ==
        93.34);
  CHECK(round2(reduction_percent(Method::kClosedForm,
                                 Method::kFullSdrNoEnergyBeam, large)) ==
        99.25);

  // The plain reduced SDP also gains over the closed form's reference.
  CHECK(round2(reduction_percent(Method::kClosedForm, Method::kNullspaceSdr,
                                 small)) == 90.91);
}

TEST_CASE("frozen absolute costs at the small reference dimensions") {
  ComplexityDims d;
  d.M = 8;
  d.K_I = 2;
  d.K_E = 2;
  CHECK(complexity_of(Method::kNullspaceSdr, d) ==
        doctest::Approx(12761.1).epsilon(1e-4));
  CHECK(complexity_of(Method::kNullspaceSdrEnergyBeam, d) ==
        doctest::Approx(13538.2).epsilon(1e-4));
  // 2^3.5 * 8^3.5 = 16^3.5 = 16384, plus 2 * 8^3 (up to square-root roundoff).
  CHECK(complexity_of(Method::kFullSdrNoEnergyBeam, d) ==
        doctest::Approx(17408.0).epsilon(1e-12));
  CHECK(complexity_of(Method::kFullSdr, d) ==
        doctest::Approx(19368.2).epsilon(1e-4));
}

TEST_CASE("every method's cost grows with the antenna count") {
  const Method methods[] = {Method::kNullspaceSdr,
                            Method::kNullspaceSdrEnergyBeam,
                            Method::kClosedForm, Method::kFullSdr,
                            Method::kFullSdrNoEnergyBeam};
  for (Method m : methods) {
    double prev = 0.0;
    for (int M = 8; M <= 256; M *= 2) {
      ComplexityDims d;
      d.M = M;
      d.K_I = 4;
      d.K_E = 4;
      const double c = complexity_of(m, d);
      CHECK(c > prev);
      prev = c;
    }
  }
}

TEST_CASE("SDP-free design stays the cheapest across sizes") {
  for (int M = 8; M <= 128; M *= 2) {
    for (int K = 1; K <= 4; ++K) {
      if (2 * K > M) continue;
      ComplexityDims d;
      d.M = M;
      d.K_I = K;
      d.K_E = K;
      const double cf = complexity_of(Method::kClosedForm, d);
      CHECK(cf <= complexity_of(Method::kNullspaceSdr, d));
      CHECK(cf <= complexity_of(Method::kNullspaceSdrEnergyBeam, d));
      CHECK(cf <= complexity_of(Method::kFullSdr, d));
      CHECK(cf <= complexity_of(Method::kFullSdrNoEnergyBeam, d));
    }
  }
}

TEST_CASE("rank overrides feed the model") {
  ComplexityDims d;
  d.M = 8;
  d.K_I = 2;
  d.K_E = 2;
  d.r_I = 0;  // identity basis: no reduction of the SDP cone
  d.r_E = 2;
  const double with_identity = complexity_of(Method::kNullspaceSdr, d);
  ComplexityDims full;
  full.M = 8;
  full.K_I = 2;
  full.K_E = 2;
  CHECK(with_identity > complexity_of(Method::kNullspaceSdr, full));
}

TEST_CASE("degenerate dimensions are rejected") {
  ComplexityDims d;
  d.M = 0;
  CHECK_THROWS_AS(complexity_of(Method::kClosedForm, d), ConfigError);
  d.M = 8;
  d.K_I = 0;
  CHECK_THROWS_AS(complexity_of(Method::kClosedForm, d), ConfigError);
  d.K_I = 2;
  d.r_E = 8;  // leaves no dimensions for the energy beam
  CHECK_THROWS_AS(complexity_of(Method::kClosedForm, d), ConfigError);
  d.r_E = -1;
  d.K_E = 0;
  CHECK_THROWS_AS(complexity_of(Method::kClosedForm, d), ConfigError);
}
