#include "remimo/mimo.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

namespace remimo {

namespace {

void check_powers(double p_w, double sigma2_w) {
  if (!(p_w > 0.0)) throw NonPositivePower("capacity: P must be > 0");
  if (!(sigma2_w > 0.0)) throw NonPositivePower("capacity: sigma^2 must be > 0");
}

double log2_1p(double x) { return std::log1p(x) / M_LN2; }

} // namespace

SvdGains svd_gains(const Eigen::MatrixXcd& h) {
  if (!h.allFinite()) throw NumericalFailure("svd_gains: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("svd_gains: SVD did not converge");
  return {svd.singularValues(), svd.matrixV()};
}

Eigen::VectorXd singular_values_only(const Eigen::MatrixXcd& h) {
  if (!h.allFinite()) throw NumericalFailure("singular_values_only: non-finite entries");
  // Eigenvalues of the smaller Gram matrix, ascending from Eigen; flip and
  // clamp the tiny negatives that rounding can produce.
  Eigen::MatrixXcd gram;
  if (h.rows() <= h.cols())
    gram.noalias() = h * h.adjoint();
  else
    gram.noalias() = h.adjoint() * h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericalFailure("singular_values_only: eigensolver did not converge");
  Eigen::VectorXd ev = es.eigenvalues().reverse();
  return ev.cwiseMax(0.0).cwiseSqrt();
}

double capacity_equal_power(const Eigen::VectorXd& singular_values, int n_t, double p_w,
                            double sigma2_w) {
  check_powers(p_w, sigma2_w);
  if (n_t < 1) throw InvalidInput("capacity_equal_power: n_t must be >= 1");
  double scale = p_w / (n_t * sigma2_w);
  double c = 0.0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    double l2 = singular_values[i] * singular_values[i];
    c += log2_1p(scale * l2);
  }
  return c;
}

double capacity_equal_power_det(const Eigen::MatrixXcd& h, double p_w, double sigma2_w) {
  check_powers(p_w, sigma2_w);
  double scale = p_w / (static_cast<double>(h.cols()) * sigma2_w);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(h.rows(), h.rows()) +
                       scale * (h * h.adjoint());
  // The matrix is Hermitian positive definite, so det is real positive and
  // log|det| = sum log|u_ii| over the LU diagonal.
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  double logdet = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) logdet += std::log(std::abs(lu.matrixLU()(i, i)));
  return logdet / M_LN2;
}

PowerAllocation waterfill(const Eigen::VectorXd& singular_values, double p_w,
                          double sigma2_w) {
  check_powers(p_w, sigma2_w);
  const Eigen::Index m = singular_values.size();
  if (m == 0 || singular_values.maxCoeff() <= 0.0)
    throw AllZeroGains("waterfill: no positive gains");

  // Inverse gains sigma^2 / lambda_i^2 in the (already non-increasing) order.
  std::vector<double> inv(static_cast<std::size_t>(m), 0.0);
  Eigen::Index positive = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double l2 = singular_values[i] * singular_values[i];
    if (l2 > 0.0) {
      inv[static_cast<std::size_t>(i)] = sigma2_w / l2;
      ++positive;
    }
  }

  // Largest z for which the water level mu_z clears the z-th floor.
  double best_mu = 0.0;
  Eigen::Index best_z = 0;
  double prefix = 0.0;
  for (Eigen::Index z = 1; z <= positive; ++z) {
    prefix += inv[static_cast<std::size_t>(z - 1)];
    double mu = (p_w + prefix) / static_cast<double>(z);
    if (mu <= inv[static_cast<std::size_t>(z - 1)]) break;
    best_mu = mu;
    best_z = z;
  }

  PowerAllocation alloc;
  alloc.total_w = p_w;
  alloc.p = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < best_z; ++i)
    alloc.p[i] = best_mu - inv[static_cast<std::size_t>(i)];
  return alloc;
}

double capacity_allocated(const Eigen::VectorXd& singular_values,
                          const PowerAllocation& alloc, double sigma2_w) {
  if (!(sigma2_w > 0.0)) throw NonPositivePower("capacity_allocated: sigma^2 must be > 0");
  if (alloc.p.size() != singular_values.size())
    throw InvalidInput("capacity_allocated: allocation length mismatch");
  double c = 0.0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (alloc.p[i] < 0.0) throw InvalidInput("capacity_allocated: negative power");
    double l2 = singular_values[i] * singular_values[i];
    c += log2_1p(alloc.p[i] * l2 / sigma2_w);
  }
  return c;
}

std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::BF: return "BF";
    case Scheme::CLMP: return "CL-MP";
    case Scheme::OLMP: return "OL-MP";
    case Scheme::SISORef: return "SISO-ref";
  }
  throw InvalidInput("scheme_name: unknown scheme");
}

Scheme scheme_from_name(const std::string& name) {
  if (name == "BF") return Scheme::BF;
  if (name == "CL-MP") return Scheme::CLMP;
  if (name == "OL-MP") return Scheme::OLMP;
  if (name == "SISO-ref") return Scheme::SISORef;
  throw InvalidInput("unknown scheme '" + name + "' (expected BF, CL-MP, OL-MP, SISO-ref)");
}

SchemeResult scheme_capacity_from_gains(const Eigen::VectorXd& singular_values, int n_t,
                                        std::complex<double> h00, Scheme scheme,
                                        double p_w, double sigma2_w) {
  check_powers(p_w, sigma2_w);
  const Eigen::Index m = singular_values.size();
  SchemeResult r;
  r.scheme = scheme;
  switch (scheme) {
    case Scheme::BF: {
      r.allocation.p = Eigen::VectorXd::Zero(m);
      r.allocation.p[0] = p_w;
      r.allocation.total_w = p_w;
      r.capacity_bpshz = capacity_allocated(singular_values, r.allocation, sigma2_w);
      r.streams = 1;
      break;
    }
    case Scheme::CLMP: {
      r.allocation = waterfill(singular_values, p_w, sigma2_w);
      r.capacity_bpshz = capacity_allocated(singular_values, r.allocation, sigma2_w);
      r.streams = static_cast<int>((r.allocation.p.array() > 0.0).count());
      break;
    }
    case Scheme::OLMP: {
      r.allocation.p = Eigen::VectorXd::Constant(m, p_w / n_t);
      r.allocation.total_w = p_w;
      r.capacity_bpshz = capacity_equal_power(singular_values, n_t, p_w, sigma2_w);
      r.streams = static_cast<int>(m);
      break;
    }
    case Scheme::SISORef: {
      r.allocation.p = Eigen::VectorXd::Zero(m);
      if (m > 0) r.allocation.p[0] = p_w;
      r.allocation.total_w = p_w;
      r.capacity_bpshz = log2_1p(p_w * std::norm(h00) / sigma2_w);
      r.streams = 1;
      break;
    }
  }
  return r;
}

SchemeResult scheme_capacity(const Eigen::MatrixXcd& h, Scheme scheme, double p_w,
                             double sigma2_w) {
  Eigen::VectorXd sv = singular_values_only(h);
  return scheme_capacity_from_gains(sv, static_cast<int>(h.cols()), h(0, 0), scheme,
                                    p_w, sigma2_w);
}

int effective_rank(const Eigen::VectorXd& singular_values, double p_w, double sigma2_w,
                   double threshold_db) {
  check_powers(p_w, sigma2_w);
  const Eigen::Index m = singular_values.size();
  if (m == 0) return 0;
  double threshold = std::pow(10.0, threshold_db / 10.0);
  double scale = p_w / (static_cast<double>(m) * sigma2_w);
  int count = 0;
  for (Eigen::Index i = 0; i < m; ++i) {
    double snr = scale * singular_values[i] * singular_values[i];
    if (snr >= threshold) ++count;
  }
  return count;
}

double condition_number_db(const Eigen::VectorXd& singular_values) {
  const Eigen::Index m = singular_values.size();
  if (m == 0) throw InvalidInput("condition_number_db: empty gain set");
  double l1 = singular_values[0];
  if (l1 <= 0.0) return 0.0; // degenerate all-zero matrix
  double lm = std::max(singular_values[m - 1], l1 * 1e-15);
  return std::min(20.0 * std::log10(l1 / lm), 300.0);
}

std::vector<SchemeResult> capacity_noise_interpretation(
    const Eigen::MatrixXcd& h_los, const LinkConfig& cfg,
    const std::vector<Scheme>& schemes) {
  cfg.validate();
  double sigma2 = cfg.noise_floor_w + molecular_noise_psd(cfg) * cfg.reference_bandwidth_hz;
  Eigen::VectorXd sv = singular_values_only(h_los);
  std::vector<SchemeResult> out;
  out.reserve(schemes.size());
  for (Scheme s : schemes)
    out.push_back(scheme_capacity_from_gains(sv, static_cast<int>(h_los.cols()),
                                             h_los(0, 0), s, cfg.p_t_w, sigma2));
  return out;
}

} // namespace remimo
