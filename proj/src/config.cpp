#include "swipt/config.hpp"

#include <cmath>

namespace swipt {

double SystemConfig::kappa_I_of(int k) const {
  if (kappa_I.empty()) return kappa_default;
  return kappa_I.at(size_t(k));
}

double SystemConfig::kappa_E_of(int l) const {
  if (kappa_E.empty()) return kappa_default;
  return kappa_E.at(size_t(l));
}

void SystemConfig::validate() const {
  if (M < 1) throw ConfigError("antenna count must be positive");
  if (K_I < 1) throw ConfigError("information user count must be positive");
  if (K_E < 1) throw ConfigError("energy user count must be positive");
  if (M < K_I + K_E)
    throw ConfigError("antenna count must be at least the total user count");
  if (!(P_max > 0.0)) throw ConfigError("power budget must be positive");
  if (!(C_thre > 0.0)) throw ConfigError("capacity requirement must be positive");
  if (!(sigma0_sq > 0.0)) throw ConfigError("noise power must be positive");
  if (!(d_I > 0.0) || !(d_E > 0.0)) throw ConfigError("distances must be positive");
  if (!(alpha_I > 0.0) || !(alpha_E > 0.0))
    throw ConfigError("path loss exponents must be positive");
  auto check_kappas = [](const std::vector<double>& v, int n, const char* what) {
    if (!v.empty() && int(v.size()) != n)
      throw ConfigError(std::string("per-user Rician factor list for ") + what +
                        " must match the user count");
    for (double k : v)
      if (k < 0.0) throw ConfigError("Rician factors must be nonnegative");
  };
  check_kappas(kappa_I, K_I, "information users");
  check_kappas(kappa_E, K_E, "energy users");
  if (kappa_default < 0.0) throw ConfigError("Rician factors must be nonnegative");
  auto check_aods = [](const std::vector<double>& v, int n, const char* what) {
    if (!v.empty() && int(v.size()) != n)
      throw ConfigError(std::string("departure angle list for ") + what +
                        " must match the user count");
  };
  check_aods(aod_I, K_I, "information users");
  check_aods(aod_E, K_E, "energy users");
  if (!(eh.a > 0.0) || !(eh.b > 0.0) || !(eh.Ms > 0.0))
    throw ConfigError("harvester parameters must be positive");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) {
  if (watts < 0.0) throw DomainError("power must be nonnegative");
  if (watts == 0.0) return -std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(watts / 1e-3);
}

double path_loss(double L_ref_dB, double d, double alpha) {
  if (!(d > 0.0)) throw DomainError("distance must be positive");
  return std::pow(10.0, -L_ref_dB / 10.0) * std::pow(d, -alpha);
}

double snr_threshold(double C_thre) { return std::exp2(C_thre) - 1.0; }

}  // namespace swipt
