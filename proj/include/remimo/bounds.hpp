#pragma once

#include "remimo/linkbudget.hpp"
#include "remimo/rng.hpp"

namespace remimo {

struct BoundInputs {
  int n_t = 1;
  int n_r = 1;
  double rho = 1.0; // received SNR, dimensionless
  KFactor k_factor = KFactor::infinite();

  void validate() const {
    if (n_t < 1 || n_r < 1) throw InvalidInput("BoundInputs: antenna counts must be >= 1");
    if (!(rho > 0.0)) throw InvalidInput("BoundInputs: rho must be > 0");
    if (!(k_factor.linear() >= 0.0)) throw InvalidInput("BoundInputs: K must be >= 0");
  }
};

/// How the NLoS weight enters the lower-bound Monte-Carlo. The meaningful
/// reading scales the SNR by the NLoS *power* share 1/(K+1) — equivalent to
/// the capacity of sqrt(1/(K+1)) H_a at SNR rho — and is the default; the
/// amplitude-as-SNR variant sqrt(1/(K+1)) is kept for sensitivity analysis
/// (it overshoots the true mean at moderate K and high rho).
enum class LowerBoundScale { NlosPower, LiteralSqrt };

struct LowerBoundEstimate {
  double mean_bpshz = 0.0;
  double std_error = 0.0;
  int trials = 0;
};

/// Monte-Carlo estimate of the NLoS-only equal-power capacity
/// E[C(H_a, rho * scale)] over i.i.d. CN(0,1) matrices.
LowerBoundEstimate lower_bound_estimate(const BoundInputs& inp, int trials,
                                        RandomStream& rng,
                                        LowerBoundScale scale = LowerBoundScale::NlosPower);

/// Closed-form Rician ergodic-capacity upper bound (Jensen type, exact at the
/// K -> infinity and K = 0 limits).
double upper_bound(const BoundInputs& inp);

struct LimitCapacities {
  double high_absorption = 0.0; // n log2(1 + rho), K -> 0 limit
  double no_absorption = 0.0;   // log2(1 + n^2 rho), K -> infinity limit
};

LimitCapacities limit_capacities(int n, double rho);

} // namespace remimo
