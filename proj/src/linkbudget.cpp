#include "remimo/linkbudget.hpp"

#include "remimo/constants.hpp"

namespace remimo {

namespace {
// Free-space amplitude scale c / (4 pi f d).
double fspl_amplitude(double f_hz, double d_m) {
  return constants::c / (4.0 * constants::pi * f_hz * d_m);
}
} // namespace

double fspl_attenuation(double f_hz, double d_m) {
  if (!(f_hz > 0.0) || !(d_m > 0.0))
    throw NonPositiveInput("fspl_attenuation: f and d must be > 0");
  double a = 4.0 * constants::pi * f_hz * d_m / constants::c;
  return a * a;
}

double molecular_attenuation(double k_per_m, double d_m) {
  if (!(k_per_m >= 0.0)) throw NegativeAbsorption("molecular_attenuation: k must be >= 0");
  if (!(d_m > 0.0)) throw NonPositiveInput("molecular_attenuation: d must be > 0");
  return std::exp(k_per_m * d_m);
}

double total_attenuation(double f_hz, double d_m, double k_per_m) {
  return fspl_attenuation(f_hz, d_m) * molecular_attenuation(k_per_m, d_m);
}

double los_received_power(const LinkConfig& cfg) {
  cfg.validate();
  double amp = fspl_amplitude(cfg.f_hz, cfg.d_m);
  return cfg.p_t_w * amp * amp * std::exp(-cfg.k_per_m * cfg.d_m);
}

double reradiated_power(const LinkConfig& cfg) {
  cfg.validate();
  double amp = fspl_amplitude(cfg.f_hz, cfg.d_m);
  // 1 - e^{-kd} via expm1 keeps small-kd precision.
  return cfg.p_t_w * amp * amp * (-std::expm1(-cfg.k_per_m * cfg.d_m));
}

double sky_noise_psd(double f_hz, double k_per_m) {
  if (!(f_hz > 0.0)) throw NonPositiveFrequency("sky_noise_psd: f must be > 0");
  if (!(k_per_m >= 0.0)) throw NegativeAbsorption("sky_noise_psd: k must be >= 0");
  if (k_per_m == 0.0) return 0.0;
  double amp = constants::c / (std::sqrt(4.0 * constants::pi) * f_hz);
  return constants::k_B * constants::T0 * amp * amp;
}

double self_induced_noise_psd(const LinkConfig& cfg) {
  // Same formula as the re-radiated signal power; route through the same code
  // path so the two are bit-identical by construction.
  return reradiated_power(cfg);
}

double molecular_noise_psd(const LinkConfig& cfg) {
  return sky_noise_psd(cfg.f_hz, cfg.k_per_m) + self_induced_noise_psd(cfg);
}

KFactor rician_k_factor(double k_per_m, double d_m) {
  if (!(k_per_m >= 0.0)) throw NegativeAbsorption("rician_k_factor: k must be >= 0");
  if (!(d_m > 0.0)) throw NonPositiveInput("rician_k_factor: d must be > 0");
  if (k_per_m == 0.0) return KFactor::infinite();
  // K = e^{-kd} / (1 - e^{-kd}) = 1 / (e^{kd} - 1).
  return KFactor::from_linear(1.0 / std::expm1(k_per_m * d_m));
}

} // namespace remimo
