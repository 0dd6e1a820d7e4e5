#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "remimo/bounds.hpp"
#include "remimo/channel.hpp"
#include "remimo/mimo.hpp"
#include "remimo/spectra.hpp"

namespace remimo {

enum class SweepAxis { Frequency, Distance, Absorption, Power };

/// FixedTransmitPower drives the full physical channel (path loss, molecular
/// attenuation, watt-denominated noise). FixedReceivedSnr uses the normalized
/// unit-entry-power model and pins P/sigma^2 = rho, bypassing path loss.
enum class SnrConvention { FixedTransmitPower, FixedReceivedSnr };

struct ExperimentConfig {
  // link
  double frequency_hz = 0.0; // required unless swept
  double distance_m = 0.0;   // required unless swept
  double transmit_power_w = 0.150;
  double noise_floor_dbm = -80.0;
  double reference_bandwidth_hz = 1.0;
  // medium: absorption_override wins, then mixture+spectra files, else vacuum
  std::string mixture_path;
  std::string spectra_dir;
  std::optional<double> absorption_override;
  // arrays
  int tx_count = 64;
  int rx_count = 64;
  double spacing_wavelengths = 0.5;
  // spacing follows the current sweep frequency unless pinned here
  std::optional<double> spacing_reference_hz;
  // fixed orientation angles; unset = random per trial
  std::optional<Eigen::Vector3d> tx_orientation;
  std::optional<Eigen::Vector3d> rx_orientation;
  // monte carlo
  int trials = 5000;
  std::uint64_t seed = 1;
  ReRadiationMode mode = ReRadiationMode::scattering();
  std::vector<Scheme> schemes = {Scheme::BF, Scheme::CLMP, Scheme::OLMP};
  SnrConvention snr_convention = SnrConvention::FixedTransmitPower;
  double received_snr_db = 5.0;
  double snr_threshold_db = 0.0;
  int threads = 1;
  // sweep
  SweepAxis sweep_axis = SweepAxis::Frequency;
  double sweep_start = 0.0;
  double sweep_stop = 0.0;
  int sweep_points = 0;
  bool sweep_log = false;

  double noise_floor_w() const;
};

double dbm_to_watts(double dbm);

/// Absorption coefficient source, resolved once per run.
class Medium {
 public:
  static Medium vacuum();
  static Medium constant(double k_per_m);
  static Medium from_files(AbsorptionDatabase db, GasMixture mix);
  /// Applies the config precedence (override > files > vacuum). Loads files.
  static Medium resolve(const ExperimentConfig& cfg);

  double k_at(double f_hz) const;
  const std::vector<std::string>& ingested_files() const { return ingested_; }

 private:
  Medium() = default;
  std::optional<double> constant_k_;
  std::optional<AbsorptionDatabase> db_;
  std::optional<GasMixture> mix_;
  std::vector<std::string> ingested_;
};

/// One CSV row: aggregates for one scheme at one sweep point.
struct CapacityStatsRow {
  double sweep_value = 0.0;
  double frequency_hz = 0.0;
  double distance_m = 0.0;
  std::string mode_name; // "noise" | "scattering"
  Scheme scheme = Scheme::BF;
  double capacity_mean = 0.0;
  double capacity_std = 0.0;
  double capacity_se = 0.0;
  KFactor k_factor = KFactor::infinite();
  double rank_mean = 0.0;
  double cond_db_mean = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
};

std::vector<std::string> capacity_csv_header();
std::vector<std::string> to_csv_cells(const CapacityStatsRow& row);

/// Monte-Carlo estimate at one sweep point: `trials` channel draws on
/// deterministic per-trial substreams keyed by (seed, point_index, trial),
/// every requested scheme evaluated on each draw. Thread count never changes
/// the result, only the wall time.
std::vector<CapacityStatsRow> run_point(const ExperimentConfig& cfg, const Medium& medium,
                                        double sweep_value, std::size_t point_index);

/// One run_point per sweep grid value; rows ordered by sweep index, then by
/// the configured scheme order.
std::vector<CapacityStatsRow> run_sweep(const ExperimentConfig& cfg, const Medium& medium);

/// The sweep grid implied by the config (linear or log spaced, inclusive).
std::vector<double> sweep_grid(const ExperimentConfig& cfg);

/// Quarter-circle density sqrt(4 - x^2) / pi on [0, 2].
double quarter_circle_density(double x);
/// Its CDF (x sqrt(4-x^2)/2 + 2 asin(x/2)) / pi, clamped outside [0, 2].
double quarter_circle_cdf(double x);

struct SvHistogram {
  std::vector<double> bin_left;
  std::vector<double> bin_right;
  std::vector<double> density;
  std::vector<double> reference; // quarter-circle density at bin centers
  double ks = 0.0;               // KS distance of pooled values vs quarter circle
  int trials = 0;
  std::uint64_t seed = 0;
};

/// Pools singular values of the normalized scattering matrix scaled by
/// 1/sqrt(n_t) over `trials` draws. Requires scattering mode.
SvHistogram singular_value_histogram(const ExperimentConfig& cfg, const Medium& medium,
                                     int bins);

struct BoundsRow {
  KFactor k_factor = KFactor::infinite();
  int n_t = 0;
  int n_r = 0;
  double rho = 0.0;
  LowerBoundEstimate lower;
  double upper = 0.0;
  LimitCapacities limits;
  std::uint64_t seed = 0;
};

std::vector<std::string> bounds_csv_header();
std::vector<std::string> to_csv_cells(const BoundsRow& row);

/// Evaluates the analytic bounds over the sweep grid interpreted as a
/// K-factor grid, with rho taken from the received-SNR setting.
std::vector<BoundsRow> run_bounds_grid(const ExperimentConfig& cfg);

} // namespace remimo
