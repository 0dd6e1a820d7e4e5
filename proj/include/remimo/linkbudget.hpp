#pragma once

#include <cmath>
#include <limits>

#include "remimo/errors.hpp"

namespace remimo {

/// Scalar link parameters. Power values are total band powers in watts tied
/// to `reference_bandwidth_hz` (default 1 Hz), so PSD-style quantities are
/// per-Hz and capacities come out in bps/Hz.
struct LinkConfig {
  double f_hz;
  double d_m;
  double p_t_w;
  double noise_floor_w;
  double k_per_m = 0.0;
  double reference_bandwidth_hz = 1.0;

  void validate() const {
    if (!(f_hz > 0.0)) throw NonPositiveFrequency("LinkConfig: f must be > 0");
    if (!(d_m > 0.0)) throw NonPositiveInput("LinkConfig: d must be > 0");
    if (!(p_t_w > 0.0)) throw NonPositivePower("LinkConfig: p_t must be > 0");
    if (!(noise_floor_w > 0.0)) throw NonPositivePower("LinkConfig: noise floor must be > 0");
    if (!(k_per_m >= 0.0)) throw NegativeAbsorption("LinkConfig: k must be >= 0");
    if (!(reference_bandwidth_hz > 0.0))
      throw NonPositiveInput("LinkConfig: reference bandwidth must be > 0");
  }
};

/// Free-space spreading attenuation (4*pi*f*d/c)^2, dimensionless.
double fspl_attenuation(double f_hz, double d_m);

/// Molecular absorption attenuation e^{k d}, dimensionless >= 1.
double molecular_attenuation(double k_per_m, double d_m);

/// Product of FSPL and molecular attenuation.
double total_attenuation(double f_hz, double d_m, double k_per_m);

/// LoS received power P_t (c / 4 pi f d)^2 e^{-k d}, W.
double los_received_power(const LinkConfig& cfg);

/// Power re-radiated by the absorbing molecules,
/// P_t (1 - e^{-k d}) (c / 4 pi f d)^2, W.
double reradiated_power(const LinkConfig& cfg);

/// Atmospheric (sky) noise PSD, W/Hz: k_B T0 L (c / (sqrt(4 pi) f))^2 with the
/// distance-saturated emissivity L = 1 for k > 0 and 0 for k = 0.
double sky_noise_psd(double f_hz, double k_per_m);

/// Signal-correlated molecular noise PSD, W/Hz. Identical expression to
/// reradiated_power and guaranteed bit-identical to it.
double self_induced_noise_psd(const LinkConfig& cfg);

/// Sky noise plus self-induced noise, W/Hz.
double molecular_noise_psd(const LinkConfig& cfg);

/// Rician K-factor with an explicit infinity for the pure-LoS case. The
/// infinite value is a deliberate sentinel (k = 0 branch), never the result
/// of an overflowing division.
class KFactor {
 public:
  static KFactor infinite() { return KFactor(std::numeric_limits<double>::infinity()); }
  static KFactor from_linear(double linear) { return KFactor(linear); }

  bool is_infinite() const { return std::isinf(linear_); }
  double linear() const { return linear_; }
  /// 10 log10(K); +inf maps to +inf, K = 0 maps to -inf.
  double db() const { return 10.0 * std::log10(linear_); }

 private:
  explicit KFactor(double linear) : linear_(linear) {}
  double linear_;
};

/// K = e^{-k d} / (1 - e^{-k d}); k = 0 yields the infinite sentinel.
KFactor rician_k_factor(double k_per_m, double d_m);

} // namespace remimo
