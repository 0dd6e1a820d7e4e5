#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

#include "remimo/geometry.hpp"
#include "remimo/linkbudget.hpp"
#include "remimo/rng.hpp"

namespace remimo {

/// How the scattered coefficient's randomness is modeled: a unit-modulus
/// random phase (deterministic magnitude) or a circularly-symmetric complex
/// Gaussian with the same expected power.
enum class PhaseModel { UniformPhase, ComplexGaussian };

/// Re-radiation interpretation: NoiseOnly keeps the channel pure LoS and
/// accounts for absorbed energy as extra noise; Scattering adds the
/// re-radiated field as an NLoS channel component.
struct ReRadiationMode {
  enum class Kind { NoiseOnly, Scattering };
  Kind kind = Kind::Scattering;
  PhaseModel phase_model = PhaseModel::UniformPhase;

  static ReRadiationMode noise_only() { return {Kind::NoiseOnly, PhaseModel::UniformPhase}; }
  static ReRadiationMode scattering(PhaseModel pm = PhaseModel::UniformPhase) {
    return {Kind::Scattering, pm};
  }
  bool is_scattering() const { return kind == Kind::Scattering; }
};

/// LoS transfer coefficient (c / 4 pi f d) e^{-k d / 2} e^{j 2 pi d f / c}.
std::complex<double> los_coefficient(double f_hz, double d_ij_m, double k_per_m);

/// Scattered transfer coefficient with magnitude scale
/// sqrt(1 - e^{-k d}) (c / 4 pi f d) and a random factor per PhaseModel.
std::complex<double> reradiation_coefficient(double f_hz, double d_ij_m, double k_per_m,
                                             PhaseModel phase_model, RandomStream& rng);

struct ChannelMatrix {
  Eigen::MatrixXcd h;     // h_los + h_a (Scattering) or h_los (NoiseOnly)
  Eigen::MatrixXcd h_los;
  Eigen::MatrixXcd h_a;   // zero matrix in NoiseOnly mode
  Eigen::MatrixXd distances; // exact per-pair d_ij used for every entry
  ReRadiationMode mode;
  double f_hz = 0.0;
  double k_per_m = 0.0;
  double center_distance_m = 0.0;
  std::uint64_t trial_seed = 0;
};

/// Assembles the full matrix from exact per-pair distances. Entry draw order
/// is fixed (row-major over rx, tx), so a given stream state yields an
/// identical matrix every time.
ChannelMatrix assemble_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                               double f_hz, double k_per_m, ReRadiationMode mode,
                               RandomStream& rng);

/// Unit-power normalized Rician split: every |h_los_hat| entry is exactly 1
/// and every h_a_hat entry has unit expected power, so
/// H ~ (c/4 pi f d) (sqrt(K/(K+1)) h_los_hat + sqrt(1/(K+1)) h_a_hat)
/// up to far-field per-entry distance spread.
struct NormalizedDecomposition {
  KFactor k_factor = KFactor::infinite();
  Eigen::MatrixXcd h_los_hat;
  Eigen::MatrixXcd h_a_hat;
  double amplitude_scale = 0.0; // c / (4 pi f d) at the center distance
};

/// Throws PureLoS when k = 0 (no scattered part; K is infinite).
NormalizedDecomposition normalized_decomposition(const ChannelMatrix& channel);

} // namespace remimo
