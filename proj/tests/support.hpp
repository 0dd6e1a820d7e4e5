#pragma once

// Shared helpers for the unit, CLI, and acceptance suites.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "remimo/rng.hpp"

namespace testsupport {

inline std::filesystem::path data_dir() {
#ifdef REMIMO_DATA_DIR
  return std::filesystem::path(REMIMO_DATA_DIR);
#else
  return std::filesystem::path("data");
#endif
}

inline bool rel_close(double a, double b, double tol) {
  double scale = std::max(std::abs(a), std::abs(b));
  if (scale == 0.0) return true;
  return std::abs(a - b) <= tol * scale;
}

inline bool abs_close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

/// Normalized Rician sample with the rank-1 specular component (all-ones):
/// sqrt(K/(K+1)) * 1 + sqrt(1/(K+1)) * CN(0,1) entries.
inline Eigen::MatrixXcd rician_matrix(int n_r, int n_t, double k_factor,
                                      remimo::RandomStream& rng) {
  const double w_los = std::sqrt(k_factor / (k_factor + 1.0));
  const double w_nlos = std::sqrt(1.0 / (k_factor + 1.0));
  Eigen::MatrixXcd h(n_r, n_t);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) h(i, j) = w_los + w_nlos * rng.cnormal();
  return h;
}

inline Eigen::MatrixXcd complex_gaussian_matrix(int n_r, int n_t, remimo::RandomStream& rng) {
  Eigen::MatrixXcd h(n_r, n_t);
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j) h(i, j) = rng.cnormal();
  return h;
}

/// Independent water-filling oracle: bisection on the water level mu with
/// sum_i max(mu - 1/g_i, 0) = P, where g_i = lambda_i^2 / sigma^2.
inline Eigen::VectorXd waterfill_bisection_oracle(const Eigen::VectorXd& singular_values,
                                                  double p_w, double sigma2_w) {
  const Eigen::Index m = singular_values.size();
  Eigen::VectorXd inv_gain(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    double g = singular_values(i) * singular_values(i) / sigma2_w;
    inv_gain(i) = g > 0.0 ? 1.0 / g : std::numeric_limits<double>::infinity();
  }
  double lo = 0.0, hi = p_w + inv_gain.minCoeff() + 1.0;
  auto allocated = [&](double mu) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) s += std::max(mu - inv_gain(i), 0.0);
    return s;
  };
  while (allocated(hi) < p_w) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (allocated(mid) < p_w)
      lo = mid;
    else
      hi = mid;
  }
  double mu = 0.5 * (lo + hi);
  Eigen::VectorXd p(m);
  for (Eigen::Index i = 0; i < m; ++i) p(i) = std::max(mu - inv_gain(i), 0.0);
  return p;
}

struct CommandResult {
  int exit_code = -1;
  std::string output; // stdout+stderr interleaved
};

/// Runs a shell command, capturing combined output and the exit status.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult res;
  FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
  if (!pipe) return res;
  char buf[1024];
  while (std::fgets(buf, sizeof(buf), pipe)) res.output += buf;
  int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::filesystem::path fresh_tmp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("remimo_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(p);
  return p;
}

} // namespace testsupport
