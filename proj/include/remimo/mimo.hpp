#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "remimo/errors.hpp"
#include "remimo/linkbudget.hpp"

namespace remimo {

/// Thin SVD products needed for precoding: non-increasing singular values and
/// the matching right singular vectors.
struct SvdGains {
  Eigen::VectorXd singular_values; // lambda_1 >= ... >= lambda_m >= 0
  Eigen::MatrixXcd right_vectors;  // n_t x m, orthonormal columns
};

/// Full decomposition via BDCSVD; reconstruction-accurate, use for precoder
/// extraction and verification.
SvdGains svd_gains(const Eigen::MatrixXcd& h);

/// Singular values only, computed from the smaller Gram matrix's Hermitian
/// eigenvalues. Several times faster than a full SVD; this is the Monte-Carlo
/// hot path. Agrees with svd_gains to the square-rooted eigen tolerance.
Eigen::VectorXd singular_values_only(const Eigen::MatrixXcd& h);

/// Equal-power capacity sum_i log2(1 + P lambda_i^2 / (n_t sigma^2)), bps/Hz.
double capacity_equal_power(const Eigen::VectorXd& singular_values, int n_t, double p_w,
                            double sigma2_w);

/// Same quantity through the determinant form log2 det(I + P/(n_t s2) H H^*).
double capacity_equal_power_det(const Eigen::MatrixXcd& h, double p_w, double sigma2_w);

struct PowerAllocation {
  Eigen::VectorXd p; // per-eigenchannel powers, W, all >= 0
  double total_w = 0.0;
};

/// Water-filling over gains lambda_i^2 / sigma^2: P_i = max(mu - sigma^2 /
/// lambda_i^2, 0) with mu solved exactly from the largest funded set.
PowerAllocation waterfill(const Eigen::VectorXd& singular_values, double p_w,
                          double sigma2_w);

/// sum_i log2(1 + P_i lambda_i^2 / sigma^2), bps/Hz.
double capacity_allocated(const Eigen::VectorXd& singular_values,
                          const PowerAllocation& alloc, double sigma2_w);

enum class Scheme { BF, CLMP, OLMP, SISORef };

std::string scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct SchemeResult {
  Scheme scheme;
  double capacity_bpshz = 0.0;
  PowerAllocation allocation;
  int streams = 0; // z
};

/// BF: all power on lambda_1. CL-MP: water-filled eigenchannels.
/// OL-MP: identity precoding, equal per-antenna power. SISO-ref: the (0,0)
/// element pair driven with the full power budget.
SchemeResult scheme_capacity(const Eigen::MatrixXcd& h, Scheme scheme, double p_w,
                             double sigma2_w);

/// Same evaluation from precomputed singular values; h00 feeds SISO-ref.
SchemeResult scheme_capacity_from_gains(const Eigen::VectorXd& singular_values, int n_t,
                                        std::complex<double> h00, Scheme scheme,
                                        double p_w, double sigma2_w);

/// Number of eigenchannels whose SNR under an equal P/m split clears the
/// threshold (0 dB default).
int effective_rank(const Eigen::VectorXd& singular_values, double p_w, double sigma2_w,
                   double threshold_db = 0.0);

/// 20 log10(lambda_1 / lambda_m) with lambda_m floored at lambda_1 * 1e-15,
/// capping the result at 300 dB.
double condition_number_db(const Eigen::VectorXd& singular_values);

/// Re-radiation-as-noise capacity path: evaluates the requested schemes on
/// the pure LoS matrix with sigma^2 = noise floor + molecular noise power in
/// the reference bandwidth.
std::vector<SchemeResult> capacity_noise_interpretation(
    const Eigen::MatrixXcd& h_los, const LinkConfig& cfg,
    const std::vector<Scheme>& schemes);

} // namespace remimo
