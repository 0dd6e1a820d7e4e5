#include "remimo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>

#include "remimo/constants.hpp"
#include "remimo/csvio.hpp"
#include "remimo/linkbudget.hpp"

namespace remimo {

double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

double ExperimentConfig::noise_floor_w() const { return dbm_to_watts(noise_floor_dbm); }

Medium Medium::vacuum() { return Medium{}; }

Medium Medium::constant(double k_per_m) {
  if (!(k_per_m >= 0.0)) throw NegativeAbsorption("Medium: constant k must be >= 0");
  Medium m;
  m.constant_k_ = k_per_m;
  return m;
}

Medium Medium::from_files(AbsorptionDatabase db, GasMixture mix) {
  for (const auto& [species, fraction] : mix.entries()) {
    (void)fraction;
    if (!db.contains(species))
      throw UnknownSpecies("mixture species '" + species + "' missing from spectra database");
  }
  Medium m;
  m.db_ = std::move(db);
  m.mix_ = std::move(mix);
  return m;
}

Medium Medium::resolve(const ExperimentConfig& cfg) {
  if (cfg.absorption_override) {
    Medium m = constant(*cfg.absorption_override);
    return m;
  }
  if (!cfg.mixture_path.empty()) {
    if (cfg.spectra_dir.empty())
      throw ValidationError("medium.spectra_dir", "required when medium.mixture is set");
    AbsorptionDatabase db = AbsorptionDatabase::load_directory(cfg.spectra_dir);
    GasMixture mix = load_mixture(cfg.mixture_path);
    Medium m = from_files(std::move(db), std::move(mix));
    for (const auto& entry : std::filesystem::directory_iterator(cfg.spectra_dir)) {
      if (entry.path().extension() == ".csv") m.ingested_.push_back(entry.path().string());
    }
    std::sort(m.ingested_.begin(), m.ingested_.end());
    m.ingested_.push_back(cfg.mixture_path);
    return m;
  }
  return vacuum();
}

double Medium::k_at(double f_hz) const {
  if (constant_k_) return *constant_k_;
  if (db_ && mix_) return mixture_coefficient(*db_, *mix_, f_hz);
  return 0.0;
}

std::vector<std::string> capacity_csv_header() {
  return {"sweep_value",       "frequency_hz", "distance_m",  "mode",
          "scheme",            "capacity_mean_bpshz", "capacity_std", "capacity_se",
          "k_factor_db",       "rank_mean",    "cond_db",     "trials",
          "seed"};
}

std::vector<std::string> to_csv_cells(const CapacityStatsRow& row) {
  return {format_double(row.sweep_value),
          format_double(row.frequency_hz),
          format_double(row.distance_m),
          row.mode_name,
          scheme_name(row.scheme),
          format_double(row.capacity_mean),
          format_double(row.capacity_std),
          format_double(row.capacity_se),
          format_double(row.k_factor.db()),
          format_double(row.rank_mean),
          format_double(row.cond_db_mean),
          format_u64(static_cast<std::uint64_t>(row.trials)),
          format_u64(row.seed)};
}

namespace {

// Everything one trial needs, resolved once per sweep point.
struct PointSetup {
  double f_hz;
  double d_m;
  double p_t_w;
  double k_per_m;
  double spacing_m;
  double p_budget; // P fed to the precoder
  double sigma2;   // noise power it competes against
};

PointSetup resolve_point(const ExperimentConfig& cfg, const Medium& medium,
                         double sweep_value, bool swept) {
  PointSetup s{};
  s.f_hz = cfg.frequency_hz;
  s.d_m = cfg.distance_m;
  s.p_t_w = cfg.transmit_power_w;
  double rho = std::pow(10.0, cfg.received_snr_db / 10.0);
  if (swept) {
    switch (cfg.sweep_axis) {
      case SweepAxis::Frequency: s.f_hz = sweep_value; break;
      case SweepAxis::Distance: s.d_m = sweep_value; break;
      case SweepAxis::Absorption: break; // handled below
      case SweepAxis::Power:
        if (cfg.snr_convention == SnrConvention::FixedReceivedSnr)
          rho = sweep_value;
        else
          s.p_t_w = sweep_value;
        break;
    }
  }
  if (!(s.f_hz > 0.0)) throw NonPositiveFrequency("run: frequency must be > 0");
  if (!(s.d_m > 0.0)) throw NonPositiveInput("run: distance must be > 0");
  if (swept && cfg.sweep_axis == SweepAxis::Absorption) {
    if (!(sweep_value >= 0.0)) throw NegativeAbsorption("run: swept k must be >= 0");
    s.k_per_m = sweep_value;
  } else {
    s.k_per_m = medium.k_at(s.f_hz);
  }
  double spacing_f = cfg.spacing_reference_hz.value_or(s.f_hz);
  s.spacing_m = cfg.spacing_wavelengths * constants::c / spacing_f;

  if (cfg.snr_convention == SnrConvention::FixedReceivedSnr) {
    s.p_budget = rho;
    s.sigma2 = 1.0;
  } else {
    if (!(s.p_t_w > 0.0)) throw NonPositivePower("run: transmit power must be > 0");
    LinkConfig link{s.f_hz, s.d_m, s.p_t_w, cfg.noise_floor_w(), s.k_per_m,
                    cfg.reference_bandwidth_hz};
    link.validate();
    s.p_budget = s.p_t_w;
    s.sigma2 = link.noise_floor_w;
    if (!cfg.mode.is_scattering())
      s.sigma2 += molecular_noise_psd(link) * link.reference_bandwidth_hz;
  }
  return s;
}

// Normalized unit-entry-power channel: exact per-pair phases for the LoS
// part, global Rician weights from the center distance.
Eigen::MatrixXcd normalized_channel(const ExperimentConfig& cfg, const PointSetup& s,
                                    const ArrayGeometry& tx, const ArrayGeometry& rx,
                                    RandomStream& rng) {
  const Eigen::MatrixXd d = pairwise_distances(tx, rx);
  const int n_r = static_cast<int>(d.rows());
  const int n_t = static_cast<int>(d.cols());
  Eigen::MatrixXcd h(n_r, n_t);
  const double phase_scale = 2.0 * constants::pi * s.f_hz / constants::c;
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_t; ++j)
      h(i, j) = std::polar(1.0, phase_scale * d(i, j));
  if (!cfg.mode.is_scattering() || s.k_per_m == 0.0) return h;
  const double kd = s.k_per_m * s.d_m;
  const double w_los = std::exp(-kd / 2.0);
  const double w_nlos = std::sqrt(-std::expm1(-kd));
  for (int i = 0; i < n_r; ++i) {
    for (int j = 0; j < n_t; ++j) {
      std::complex<double> a = (cfg.mode.phase_model == PhaseModel::UniformPhase)
                                   ? std::polar(1.0, rng.uniform(0.0, 2.0 * constants::pi))
                                   : rng.cnormal();
      h(i, j) = w_los * h(i, j) + w_nlos * a;
    }
  }
  return h;
}

struct TrialSlots {
  std::vector<std::vector<double>> caps; // [scheme][trial]
  std::vector<double> rank;
  std::vector<double> cond;
};

// Runs trials [t0, t1) of one sweep point into preallocated slots. Each trial
// owns the substream (seed, point_index, trial), so the partitioning into
// threads cannot change any value.
void run_trial_range(const ExperimentConfig& cfg, const PointSetup& s,
                     std::size_t point_index, int t0, int t1, TrialSlots& out) {
  for (int t = t0; t < t1; ++t) {
    RandomStream rng = RandomStream::derive(cfg.seed, point_index,
                                            static_cast<std::uint64_t>(t));
    ArrayPose tx_pose, rx_pose;
    if (cfg.tx_orientation)
      tx_pose = ArrayPose{Eigen::Vector3d::Zero(), *cfg.tx_orientation};
    else
      tx_pose = random_pose(rng, Eigen::Vector3d::Zero());
    Eigen::Vector3d rx_center(s.d_m, 0.0, 0.0);
    if (cfg.rx_orientation)
      rx_pose = ArrayPose{rx_center, *cfg.rx_orientation};
    else
      rx_pose = random_pose(rng, rx_center);
    ArrayGeometry tx = build_square_array(cfg.tx_count, s.spacing_m, tx_pose);
    ArrayGeometry rx = build_square_array(cfg.rx_count, s.spacing_m, rx_pose);

    Eigen::MatrixXcd h;
    if (cfg.snr_convention == SnrConvention::FixedReceivedSnr) {
      h = normalized_channel(cfg, s, tx, rx, rng);
    } else {
      ChannelMatrix ch = assemble_channel(tx, rx, s.f_hz, s.k_per_m, cfg.mode, rng);
      h = std::move(ch.h);
    }
    Eigen::VectorXd sv = singular_values_only(h);
    std::complex<double> h00 = h(0, 0);
    for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
      SchemeResult r = scheme_capacity_from_gains(sv, cfg.tx_count, h00, cfg.schemes[si],
                                                  s.p_budget, s.sigma2);
      out.caps[si][static_cast<std::size_t>(t)] = r.capacity_bpshz;
    }
    out.rank[static_cast<std::size_t>(t)] =
        effective_rank(sv, s.p_budget, s.sigma2, cfg.snr_threshold_db);
    out.cond[static_cast<std::size_t>(t)] = condition_number_db(sv);
  }
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd r;
  if (v.empty()) return r;
  double sum = 0.0;
  for (double x : v) sum += x;
  r.mean = sum / static_cast<double>(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    r.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
  }
  return r;
}

std::vector<CapacityStatsRow> run_point_impl(const ExperimentConfig& cfg,
                                             const Medium& medium, double sweep_value,
                                             std::size_t point_index, bool swept) {
  if (cfg.trials < 1) throw InvalidInput("run: trials must be >= 1");
  if (cfg.schemes.empty()) throw InvalidInput("run: at least one scheme required");
  PointSetup s = resolve_point(cfg, medium, sweep_value, swept);

  TrialSlots slots;
  slots.caps.assign(cfg.schemes.size(), std::vector<double>(cfg.trials, 0.0));
  slots.rank.assign(cfg.trials, 0.0);
  slots.cond.assign(cfg.trials, 0.0);

  int n_threads = std::max(1, std::min(cfg.threads, cfg.trials));
  if (n_threads == 1) {
    run_trial_range(cfg, s, point_index, 0, cfg.trials, slots);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr first_error;
    std::mutex error_mutex;
    int chunk = (cfg.trials + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      int t0 = w * chunk;
      int t1 = std::min(cfg.trials, t0 + chunk);
      if (t0 >= t1) break;
      pool.emplace_back([&, t0, t1] {
        try {
          run_trial_range(cfg, s, point_index, t0, t1, slots);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  MeanStd rank_ms = mean_std(slots.rank);
  MeanStd cond_ms = mean_std(slots.cond);
  KFactor k = rician_k_factor(s.k_per_m, s.d_m);

  std::vector<CapacityStatsRow> rows;
  rows.reserve(cfg.schemes.size());
  for (std::size_t si = 0; si < cfg.schemes.size(); ++si) {
    MeanStd ms = mean_std(slots.caps[si]);
    CapacityStatsRow row;
    row.sweep_value = sweep_value;
    row.frequency_hz = s.f_hz;
    row.distance_m = s.d_m;
    row.mode_name = cfg.mode.is_scattering() ? "scattering" : "noise";
    row.scheme = cfg.schemes[si];
    row.capacity_mean = ms.mean;
    row.capacity_std = ms.stddev;
    row.capacity_se = ms.stddev / std::sqrt(static_cast<double>(cfg.trials));
    row.k_factor = k;
    row.rank_mean = rank_ms.mean;
    row.cond_db_mean = cond_ms.mean;
    row.trials = cfg.trials;
    row.seed = cfg.seed;
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

std::vector<CapacityStatsRow> run_point(const ExperimentConfig& cfg, const Medium& medium,
                                        double sweep_value, std::size_t point_index) {
  return run_point_impl(cfg, medium, sweep_value, point_index, /*swept=*/false);
}

std::vector<double> sweep_grid(const ExperimentConfig& cfg) {
  if (cfg.sweep_points < 1) throw InvalidInput("sweep: points must be >= 1");
  if (cfg.sweep_points == 1) return {cfg.sweep_start};
  if (!(cfg.sweep_stop > cfg.sweep_start))
    throw InvalidInput("sweep: stop must exceed start");
  std::vector<double> grid(static_cast<std::size_t>(cfg.sweep_points));
  if (cfg.sweep_log) {
    if (!(cfg.sweep_start > 0.0))
      throw InvalidInput("sweep: log spacing needs start > 0");
    double la = std::log(cfg.sweep_start);
    double lb = std::log(cfg.sweep_stop);
    for (int i = 0; i < cfg.sweep_points; ++i)
      grid[static_cast<std::size_t>(i)] =
          std::exp(la + (lb - la) * static_cast<double>(i) /
                            static_cast<double>(cfg.sweep_points - 1));
    grid.back() = cfg.sweep_stop; // exact endpoint, no exp/log round-trip
  } else {
    for (int i = 0; i < cfg.sweep_points; ++i)
      grid[static_cast<std::size_t>(i)] =
          cfg.sweep_start + (cfg.sweep_stop - cfg.sweep_start) * static_cast<double>(i) /
                                static_cast<double>(cfg.sweep_points - 1);
    grid.back() = cfg.sweep_stop;
  }
  return grid;
}

std::vector<CapacityStatsRow> run_sweep(const ExperimentConfig& cfg, const Medium& medium) {
  std::vector<double> grid = sweep_grid(cfg);
  std::vector<CapacityStatsRow> rows;
  rows.reserve(grid.size() * cfg.schemes.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    auto point_rows = run_point_impl(cfg, medium, grid[p], p, /*swept=*/true);
    for (auto& r : point_rows) rows.push_back(std::move(r));
  }
  return rows;
}

double quarter_circle_density(double x) {
  if (x < 0.0 || x > 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / constants::pi;
}

double quarter_circle_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return (x * std::sqrt(4.0 - x * x) / 2.0 + 2.0 * std::asin(x / 2.0)) / constants::pi;
}

SvHistogram singular_value_histogram(const ExperimentConfig& cfg, const Medium& medium,
                                     int bins) {
  if (!cfg.mode.is_scattering())
    throw InvalidInput("svdist: requires scattering mode");
  if (bins < 1) throw InvalidInput("svdist: bins must be >= 1");
  if (cfg.trials < 1) throw InvalidInput("svdist: trials must be >= 1");
  PointSetup s = resolve_point(cfg, medium, 0.0, /*swept=*/false);

  const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.tx_count));
  std::vector<double> pooled;
  pooled.reserve(static_cast<std::size_t>(cfg.trials) *
                 static_cast<std::size_t>(std::min(cfg.tx_count, cfg.rx_count)));
  for (int t = 0; t < cfg.trials; ++t) {
    RandomStream rng = RandomStream::derive(cfg.seed, 0, static_cast<std::uint64_t>(t));
    ArrayPose tx_pose = cfg.tx_orientation
                            ? ArrayPose{Eigen::Vector3d::Zero(), *cfg.tx_orientation}
                            : random_pose(rng, Eigen::Vector3d::Zero());
    Eigen::Vector3d rx_center(s.d_m, 0.0, 0.0);
    ArrayPose rx_pose = cfg.rx_orientation ? ArrayPose{rx_center, *cfg.rx_orientation}
                                           : random_pose(rng, rx_center);
    ArrayGeometry tx = build_square_array(cfg.tx_count, s.spacing_m, tx_pose);
    ArrayGeometry rx = build_square_array(cfg.rx_count, s.spacing_m, rx_pose);
    Eigen::MatrixXcd h = normalized_channel(cfg, s, tx, rx, rng);
    Eigen::VectorXd sv = singular_values_only(h);
    for (Eigen::Index i = 0; i < sv.size(); ++i) pooled.push_back(sv(i) * scale);
  }
  std::sort(pooled.begin(), pooled.end());

  SvHistogram hist;
  hist.trials = cfg.trials;
  hist.seed = cfg.seed;
  const double n_pool = static_cast<double>(pooled.size());
  double d_max = 0.0;
  for (std::size_t i = 0; i < pooled.size(); ++i) {
    double f = quarter_circle_cdf(pooled[i]);
    d_max = std::max(d_max, f - static_cast<double>(i) / n_pool);
    d_max = std::max(d_max, static_cast<double>(i + 1) / n_pool - f);
  }
  hist.ks = d_max;

  double hi = std::max(2.1, pooled.back() * (1.0 + 1e-9));
  double width = hi / static_cast<double>(bins);
  std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
  for (double x : pooled) {
    auto idx = static_cast<std::size_t>(x / width);
    if (idx >= counts.size()) idx = counts.size() - 1;
    ++counts[idx];
  }
  hist.bin_left.resize(counts.size());
  hist.bin_right.resize(counts.size());
  hist.density.resize(counts.size());
  hist.reference.resize(counts.size());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    hist.bin_left[b] = width * static_cast<double>(b);
    hist.bin_right[b] = width * static_cast<double>(b + 1);
    hist.density[b] = static_cast<double>(counts[b]) / (n_pool * width);
    hist.reference[b] = quarter_circle_density(hist.bin_left[b] + width / 2.0);
  }
  return hist;
}

std::vector<std::string> bounds_csv_header() {
  return {"k_factor", "k_factor_db", "n_t", "n_r", "rho", "lower_bound_bpshz",
          "lower_bound_se", "upper_bound_bpshz", "limit_high_absorption_bpshz",
          "limit_no_absorption_bpshz", "trials", "seed"};
}

std::vector<std::string> to_csv_cells(const BoundsRow& row) {
  return {format_double(row.k_factor.linear()),
          format_double(row.k_factor.db()),
          format_u64(static_cast<std::uint64_t>(row.n_t)),
          format_u64(static_cast<std::uint64_t>(row.n_r)),
          format_double(row.rho),
          format_double(row.lower.mean_bpshz),
          format_double(row.lower.std_error),
          format_double(row.upper),
          format_double(row.limits.high_absorption),
          format_double(row.limits.no_absorption),
          format_u64(static_cast<std::uint64_t>(row.lower.trials)),
          format_u64(row.seed)};
}

std::vector<BoundsRow> run_bounds_grid(const ExperimentConfig& cfg) {
  if (cfg.tx_count != cfg.rx_count)
    throw InvalidInput("bounds: limit capacities need a square array (tx_count == rx_count)");
  std::vector<double> grid = sweep_grid(cfg);
  const double rho = std::pow(10.0, cfg.received_snr_db / 10.0);
  std::vector<BoundsRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0)) throw InvalidInput("bounds: K grid values must be >= 0");
    BoundsRow row;
    row.k_factor = KFactor::from_linear(grid[i]);
    row.n_t = cfg.tx_count;
    row.n_r = cfg.rx_count;
    row.rho = rho;
    BoundInputs inp{cfg.tx_count, cfg.rx_count, rho, row.k_factor};
    RandomStream rng = RandomStream::derive(cfg.seed, i, 0xB0u);
    row.lower = lower_bound_estimate(inp, cfg.trials, rng);
    row.upper = upper_bound(inp);
    row.limits = limit_capacities(cfg.tx_count, rho);
    row.seed = cfg.seed;
    rows.push_back(row);
  }
  return rows;
}

} // namespace remimo
