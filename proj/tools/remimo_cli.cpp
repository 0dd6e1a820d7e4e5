// remimo: batch Monte-Carlo runner for absorption-aware MIMO capacity.
// Subcommands: point, sweep, svdist, bounds. Every run writes one CSV plus a
// <output>.manifest.json provenance record. Exit codes: 0 ok, 2 config error,
// 3 data-file error, 4 numeric/runtime error.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "remimo/config.hpp"
#include "remimo/csvio.hpp"
#include "remimo/manifest.hpp"
#include "remimo/version.hpp"

namespace {

using namespace remimo;

struct RawOpts {
  std::string config_path;
  std::string output_path;
  std::uint64_t seed = 0;
  int trials = 0;
  int threads = 0;
  int bins = 40;
  std::string mode;
  std::string schemes;
  std::string phase_model;
  double frequency = 0.0;
  double distance = 0.0;
};

void add_common(CLI::App* sub, RawOpts& o, bool point_flags) {
  sub->add_option("--config", o.config_path, "Config file, 'section.key = value' lines")
      ->envname("REMIMO_CONFIG");
  sub->add_option("--output", o.output_path, "Output CSV path")
      ->required()
      ->envname("REMIMO_OUTPUT");
  sub->add_option("--seed", o.seed, "Master RNG seed")->envname("REMIMO_SEED");
  sub->add_option("--trials", o.trials, "Monte-Carlo trials per point")
      ->envname("REMIMO_TRIALS");
  sub->add_option("--mode", o.mode, "Re-radiation handling: noise|scattering")
      ->envname("REMIMO_MODE");
  sub->add_option("--schemes", o.schemes, "Comma list of BF,CL-MP,OL-MP,SISO-ref")
      ->envname("REMIMO_SCHEMES");
  sub->add_option("--threads", o.threads, "Worker threads (results are thread-count independent)")
      ->envname("REMIMO_THREADS");
  sub->add_option("--phase-model", o.phase_model, "Scattered-phase model: uniform|gaussian")
      ->envname("REMIMO_PHASE_MODEL");
  if (point_flags) {
    sub->add_option("--frequency", o.frequency, "Carrier frequency, Hz")
        ->envname("REMIMO_FREQUENCY");
    sub->add_option("--distance", o.distance, "Link distance, m")->envname("REMIMO_DISTANCE");
  }
}

ExperimentConfig assemble(CLI::App* sub, const RawOpts& o) {
  ExperimentConfig cfg;
  if (sub->count("--config")) cfg = parse_config(o.config_path);
  if (sub->count("--seed")) cfg.seed = o.seed;
  if (sub->count("--trials")) cfg.trials = o.trials;
  if (sub->count("--threads")) cfg.threads = o.threads;
  if (sub->count("--phase-model")) cfg.mode.phase_model = parse_phase_model(o.phase_model);
  if (sub->count("--mode")) cfg.mode = parse_mode(o.mode, cfg.mode.phase_model);
  if (sub->count("--schemes")) cfg.schemes = parse_scheme_list(o.schemes);
  if (sub->get_option_no_throw("--frequency") && sub->count("--frequency"))
    cfg.frequency_hz = o.frequency;
  if (sub->get_option_no_throw("--distance") && sub->count("--distance"))
    cfg.distance_m = o.distance;
  return cfg;
}

void require_point_geometry(const ExperimentConfig& cfg) {
  if (!(cfg.frequency_hz > 0.0))
    throw ValidationError("link.frequency_hz", "required (> 0) for this subcommand");
  if (!(cfg.distance_m > 0.0))
    throw ValidationError("link.distance_m", "required (> 0) for this subcommand");
}

// Worst-case aperture check over the values this run will visit; advisory
// only (the Rician split assumes the arrays are small next to the link).
void warn_if_near_field(const ExperimentConfig& cfg, bool swept) {
  double f = cfg.frequency_hz;
  double d = cfg.distance_m;
  if (swept) {
    if (cfg.sweep_axis == SweepAxis::Frequency) f = cfg.sweep_start;
    if (cfg.sweep_axis == SweepAxis::Distance) d = cfg.sweep_start;
  }
  if (!(f > 0.0) || !(d > 0.0)) return;
  double spacing_f = cfg.spacing_reference_hz.value_or(f);
  double spacing = cfg.spacing_wavelengths * constants::c / spacing_f;
  ArrayGeometry tx = build_square_array(cfg.tx_count, spacing, ArrayPose{});
  ArrayGeometry rx =
      build_square_array(cfg.rx_count, spacing, ArrayPose{Eigen::Vector3d(d, 0, 0), Eigen::Vector3d::Zero()});
  if (near_field_warning(tx, rx)) {
    std::fprintf(stderr,
                 "warning: array diagonal exceeds d/10 at f=%g Hz, d=%g m; "
                 "far-field assumptions degrade\n",
                 f, d);
  }
}

RunManifest start_manifest(const std::string& subcommand, const ExperimentConfig& cfg,
                           CLI::App* sub, const RawOpts& o) {
  RunManifest m;
  m.tool_version = version;
  m.subcommand = subcommand;
  m.seed = cfg.seed;
  m.started_utc = utc_now_iso8601();
  m.config = config_echo(cfg);
  if (sub->count("--config"))
    m.input_digests.emplace_back(o.config_path, fnv1a64_file_hex(o.config_path));
  return m;
}

void finish_manifest(RunManifest& m, const Medium& medium, const std::string& out,
                     std::size_t rows) {
  for (const auto& f : medium.ingested_files())
    m.input_digests.emplace_back(f, fnv1a64_file_hex(f));
  m.output_path = out;
  m.output_rows = rows;
  m.finished_utc = utc_now_iso8601();
  write_manifest(m, out);
}

void write_capacity_csv(const std::vector<CapacityStatsRow>& rows, const std::string& out) {
  CsvTable table(capacity_csv_header());
  for (const auto& r : rows) table.add_row(to_csv_cells(r));
  table.write_atomic(out);
}

int run_point_cmd(CLI::App* sub, const RawOpts& o) {
  ExperimentConfig cfg = assemble(sub, o);
  validate_config(cfg, /*sweep_required=*/false);
  require_point_geometry(cfg);
  RunManifest m = start_manifest("point", cfg, sub, o);
  Medium medium = Medium::resolve(cfg);
  warn_if_near_field(cfg, false);
  auto rows = run_point(cfg, medium, cfg.frequency_hz, 0);
  write_capacity_csv(rows, o.output_path);
  finish_manifest(m, medium, o.output_path, rows.size());
  std::cout << "point: " << rows.size() << " rows (" << cfg.trials << " trials) -> "
            << o.output_path << "\n";
  return 0;
}

int run_sweep_cmd(CLI::App* sub, const RawOpts& o) {
  ExperimentConfig cfg = assemble(sub, o);
  validate_config(cfg, /*sweep_required=*/true);
  if (cfg.sweep_axis != SweepAxis::Frequency && !(cfg.frequency_hz > 0.0))
    throw ValidationError("link.frequency_hz", "required when not the sweep axis");
  if (cfg.sweep_axis != SweepAxis::Distance && !(cfg.distance_m > 0.0))
    throw ValidationError("link.distance_m", "required when not the sweep axis");
  RunManifest m = start_manifest("sweep", cfg, sub, o);
  Medium medium = Medium::resolve(cfg);
  warn_if_near_field(cfg, true);
  auto rows = run_sweep(cfg, medium);
  write_capacity_csv(rows, o.output_path);
  finish_manifest(m, medium, o.output_path, rows.size());
  std::cout << "sweep: " << sweep_grid(cfg).size() << " points, " << rows.size()
            << " rows -> " << o.output_path << "\n";
  return 0;
}

int run_svdist_cmd(CLI::App* sub, const RawOpts& o) {
  ExperimentConfig cfg = assemble(sub, o);
  validate_config(cfg, /*sweep_required=*/false);
  require_point_geometry(cfg);
  if (!cfg.mode.is_scattering())
    throw ValidationError("mc.mode", "svdist requires scattering mode");
  if (o.bins < 1) throw ValidationError("bins", "must be >= 1");
  RunManifest m = start_manifest("svdist", cfg, sub, o);
  Medium medium = Medium::resolve(cfg);
  warn_if_near_field(cfg, false);
  SvHistogram hist = singular_value_histogram(cfg, medium, o.bins);
  CsvTable table({"bin_left", "bin_right", "empirical_density", "quarter_circle_density",
                  "ks_statistic", "trials", "seed"});
  for (std::size_t b = 0; b < hist.density.size(); ++b) {
    table.add_row({format_double(hist.bin_left[b]), format_double(hist.bin_right[b]),
                   format_double(hist.density[b]), format_double(hist.reference[b]),
                   format_double(hist.ks), format_u64(static_cast<std::uint64_t>(hist.trials)),
                   format_u64(hist.seed)});
  }
  table.write_atomic(o.output_path);
  finish_manifest(m, medium, o.output_path, hist.density.size());
  std::cout << "svdist: KS=" << format_double(hist.ks) << ", " << hist.density.size()
            << " bins -> " << o.output_path << "\n";
  return 0;
}

int run_bounds_cmd(CLI::App* sub, const RawOpts& o) {
  ExperimentConfig cfg = assemble(sub, o);
  // The sweep grid doubles as the K-factor grid here; K is dimensionless and
  // may start at zero, which matches the absorption-axis validation rule.
  cfg.sweep_axis = SweepAxis::Absorption;
  validate_config(cfg, /*sweep_required=*/true);
  if (cfg.tx_count != cfg.rx_count)
    throw ValidationError("array.rx_count", "bounds needs a square system (tx_count == rx_count)");
  RunManifest m = start_manifest("bounds", cfg, sub, o);
  auto rows = run_bounds_grid(cfg);
  CsvTable table(bounds_csv_header());
  for (const auto& r : rows) table.add_row(to_csv_cells(r));
  table.write_atomic(o.output_path);
  Medium none = Medium::vacuum();
  finish_manifest(m, none, o.output_path, rows.size());
  std::cout << "bounds: " << rows.size() << " K-grid rows -> " << o.output_path << "\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Molecular-absorption MIMO capacity experiments"};
  app.set_version_flag("--version", remimo::version);
  app.require_subcommand(1);

  RawOpts opts;
  CLI::App* point = app.add_subcommand("point", "Capacity statistics at one operating point");
  add_common(point, opts, true);
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Capacity statistics over a frequency/distance/absorption/power grid");
  add_common(sweep, opts, true);
  CLI::App* svdist =
      app.add_subcommand("svdist", "Pooled singular-value histogram vs the quarter-circle law");
  add_common(svdist, opts, true);
  svdist->add_option("--bins", opts.bins, "Histogram bin count")->envname("REMIMO_BINS");
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Analytic capacity bounds over a K-factor grid (sweep.* is the K grid)");
  add_common(bounds, opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (point->parsed()) return run_point_cmd(point, opts);
    if (sweep->parsed()) return run_sweep_cmd(sweep, opts);
    if (svdist->parsed()) return run_svdist_cmd(svdist, opts);
    if (bounds->parsed()) return run_bounds_cmd(bounds, opts);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const remimo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const remimo::DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
