#include "remimo/bounds.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "remimo/mimo.hpp"

namespace remimo {

LowerBoundEstimate lower_bound_estimate(const BoundInputs& inp, int trials,
                                        RandomStream& rng, LowerBoundScale scale) {
  inp.validate();
  if (trials < 1) throw InvalidInput("lower_bound_estimate: trials must be >= 1");

  LowerBoundEstimate out;
  out.trials = trials;
  if (inp.k_factor.is_infinite()) return out; // scale -> 0, bound -> 0 exactly

  double kk = inp.k_factor.linear();
  double s = (scale == LowerBoundScale::NlosPower) ? 1.0 / (kk + 1.0)
                                                   : std::sqrt(1.0 / (kk + 1.0));
  double rho_eff = inp.rho * s;

  double sum = 0.0, sumsq = 0.0;
  Eigen::MatrixXcd h(inp.n_r, inp.n_t);
  for (int t = 0; t < trials; ++t) {
    for (int i = 0; i < inp.n_r; ++i)
      for (int j = 0; j < inp.n_t; ++j) h(i, j) = rng.cnormal();
    Eigen::VectorXd sv = singular_values_only(h);
    // rho is the total received SNR; equal power splits it over n_t streams.
    double c = capacity_equal_power(sv, inp.n_t, rho_eff, 1.0);
    sum += c;
    sumsq += c * c;
  }
  out.mean_bpshz = sum / trials;
  double var = trials > 1 ? (sumsq - sum * sum / trials) / (trials - 1) : 0.0;
  out.std_error = std::sqrt(std::max(var, 0.0) / trials);
  return out;
}

double upper_bound(const BoundInputs& inp) {
  inp.validate();
  const double n_t = inp.n_t, n_r = inp.n_r, rho = inp.rho;
  if (inp.k_factor.is_infinite()) return std::log2(1.0 + n_r * n_t * rho);

  const double kk = inp.k_factor.linear();
  double a = n_r * (1.0 + n_t * kk) / (kk + 1.0);
  double b = kk * (1.0 + kk) / (n_r * (1.0 + n_t * kk));
  double excess = std::max(rho / n_t - b, 0.0);
  double first = std::log2(1.0 + a * (std::min(rho / n_t, b) * n_t + excess));
  double second = (n_t - 1.0) * std::log2(1.0 + n_r / (1.0 + kk) * excess);
  return first + second;
}

LimitCapacities limit_capacities(int n, double rho) {
  if (n < 1) throw InvalidInput("limit_capacities: n must be >= 1");
  if (!(rho > 0.0)) throw InvalidInput("limit_capacities: rho must be > 0");
  return {n * std::log2(1.0 + rho),
          std::log2(1.0 + static_cast<double>(n) * n * rho)};
}

} // namespace remimo
