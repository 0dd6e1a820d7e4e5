#include "remimo/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "remimo/csvio.hpp"

namespace remimo {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double_value(const std::string& key, const std::string& value) {
  try {
    std::size_t idx = 0;
    double v = std::stod(value, &idx);
    if (trim(value.substr(idx)) != "")
      throw ValidationError(key, "trailing characters after number in '" + value + "'");
    return v;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError(key, "expected a number, got '" + value + "'");
  }
}

long long parse_int_value(const std::string& key, const std::string& value) {
  double v = parse_double_value(key, value);
  auto i = static_cast<long long>(v);
  if (static_cast<double>(i) != v)
    throw ValidationError(key, "expected an integer, got '" + value + "'");
  return i;
}

std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  try {
    std::size_t idx = 0;
    if (!value.empty() && value[0] == '-')
      throw ValidationError(key, "expected an unsigned integer, got '" + value + "'");
    std::uint64_t v = std::stoull(value, &idx);
    if (trim(value.substr(idx)) != "")
      throw ValidationError(key, "trailing characters after integer in '" + value + "'");
    return v;
  } catch (const ValidationError&) {
    throw;
  } catch (const std::exception&) {
    throw ValidationError(key, "expected an unsigned integer, got '" + value + "'");
  }
}

std::string resolve_path(const std::string& value, const std::filesystem::path& base_dir) {
  std::filesystem::path p(value);
  if (p.is_relative()) p = base_dir / p;
  return p.lexically_normal().string();
}

std::optional<Eigen::Vector3d> parse_orientation(const std::string& key,
                                                 const std::string& value) {
  if (value == "random") return std::nullopt;
  auto parts = split(value, ',');
  if (parts.size() != 3)
    throw ValidationError(key, "expected 'random' or three comma-separated angles");
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) v(i) = parse_double_value(key, trim(parts[static_cast<std::size_t>(i)]));
  return v;
}

struct KeyContext {
  const std::filesystem::path& base_dir;
};

using Handler = std::function<void(ExperimentConfig&, const std::string&, const KeyContext&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"link.frequency_hz",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.frequency_hz = parse_double_value("link.frequency_hz", v);
       }},
      {"link.distance_m",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.distance_m = parse_double_value("link.distance_m", v);
       }},
      {"link.transmit_power_w",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.transmit_power_w = parse_double_value("link.transmit_power_w", v);
       }},
      {"link.noise_floor_dbm",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.noise_floor_dbm = parse_double_value("link.noise_floor_dbm", v);
       }},
      {"link.reference_bandwidth_hz",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.reference_bandwidth_hz = parse_double_value("link.reference_bandwidth_hz", v);
       }},
      {"medium.mixture",
       [](ExperimentConfig& c, const std::string& v, const KeyContext& ctx) {
         c.mixture_path = resolve_path(v, ctx.base_dir);
       }},
      {"medium.spectra_dir",
       [](ExperimentConfig& c, const std::string& v, const KeyContext& ctx) {
         c.spectra_dir = resolve_path(v, ctx.base_dir);
       }},
      {"medium.absorption_override",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.absorption_override = parse_double_value("medium.absorption_override", v);
       }},
      {"array.tx_count",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.tx_count = static_cast<int>(parse_int_value("array.tx_count", v));
       }},
      {"array.rx_count",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.rx_count = static_cast<int>(parse_int_value("array.rx_count", v));
       }},
      {"array.spacing_wavelengths",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.spacing_wavelengths = parse_double_value("array.spacing_wavelengths", v);
       }},
      {"array.spacing_reference_hz",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.spacing_reference_hz = parse_double_value("array.spacing_reference_hz", v);
       }},
      {"array.tx_orientation",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.tx_orientation = parse_orientation("array.tx_orientation", v);
       }},
      {"array.rx_orientation",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.rx_orientation = parse_orientation("array.rx_orientation", v);
       }},
      {"mc.trials",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.trials = static_cast<int>(parse_int_value("mc.trials", v));
       }},
      {"mc.seed",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.seed = parse_u64_value("mc.seed", v);
       }},
      {"mc.mode",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.mode = parse_mode(v, c.mode.phase_model);
       }},
      {"mc.phase_model",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.mode.phase_model = parse_phase_model(v);
       }},
      {"mc.schemes",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.schemes = parse_scheme_list(v);
       }},
      {"mc.snr_convention",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.snr_convention = parse_snr_convention(v);
       }},
      {"mc.received_snr_db",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.received_snr_db = parse_double_value("mc.received_snr_db", v);
       }},
      {"mc.threads",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.threads = static_cast<int>(parse_int_value("mc.threads", v));
       }},
      {"mimo.snr_threshold_db",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.snr_threshold_db = parse_double_value("mimo.snr_threshold_db", v);
       }},
      {"sweep.axis",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.sweep_axis = parse_sweep_axis(v);
       }},
      {"sweep.start",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.sweep_start = parse_double_value("sweep.start", v);
       }},
      {"sweep.stop",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.sweep_stop = parse_double_value("sweep.stop", v);
       }},
      {"sweep.points",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         c.sweep_points = static_cast<int>(parse_int_value("sweep.points", v));
       }},
      {"sweep.spacing",
       [](ExperimentConfig& c, const std::string& v, const KeyContext&) {
         if (v == "log")
           c.sweep_log = true;
         else if (v == "linear")
           c.sweep_log = false;
         else
           throw ValidationError("sweep.spacing", "expected 'linear' or 'log', got '" + v + "'");
       }},
  };
  return table;
}

bool is_perfect_square(int n) {
  if (n < 1) return false;
  int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  return r * r == n;
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ValidationError(key, what);
}

} // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::filesystem::path& base_dir,
                                   const std::string& origin) {
  ExperimentConfig cfg;
  KeyContext ctx{base_dir};
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError(origin + ":" + std::to_string(line_no) +
                       ": expected 'section.key = value'");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ParseError(origin + ":" + std::to_string(line_no) + ": empty key or value");
    auto it = handlers().find(key);
    if (it == handlers().end()) throw ValidationError(key, "unknown key");
    if (!seen.insert(key).second) throw ValidationError(key, "duplicate key");
    it->second(cfg, value, ctx);
  }
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.parent_path(), path.string());
}

void validate_config(const ExperimentConfig& cfg, bool sweep_required) {
  require(std::isfinite(cfg.frequency_hz) && cfg.frequency_hz >= 0.0, "link.frequency_hz",
          "must be finite and >= 0");
  require(std::isfinite(cfg.distance_m) && cfg.distance_m >= 0.0, "link.distance_m",
          "must be finite and >= 0");
  require(cfg.transmit_power_w > 0.0, "link.transmit_power_w", "must be > 0");
  require(std::isfinite(cfg.noise_floor_dbm), "link.noise_floor_dbm", "must be finite");
  require(cfg.reference_bandwidth_hz > 0.0, "link.reference_bandwidth_hz", "must be > 0");
  if (cfg.absorption_override)
    require(*cfg.absorption_override >= 0.0, "medium.absorption_override", "must be >= 0");
  if (!cfg.mixture_path.empty())
    require(!cfg.spectra_dir.empty(), "medium.spectra_dir",
            "required when medium.mixture is set");
  require(is_perfect_square(cfg.tx_count), "array.tx_count", "must be a perfect square >= 1");
  require(is_perfect_square(cfg.rx_count), "array.rx_count", "must be a perfect square >= 1");
  require(cfg.spacing_wavelengths > 0.0, "array.spacing_wavelengths", "must be > 0");
  if (cfg.spacing_reference_hz)
    require(*cfg.spacing_reference_hz > 0.0, "array.spacing_reference_hz", "must be > 0");
  require(cfg.trials >= 1, "mc.trials", "must be >= 1");
  require(!cfg.schemes.empty(), "mc.schemes", "must name at least one scheme");
  require(std::isfinite(cfg.received_snr_db), "mc.received_snr_db", "must be finite");
  require(cfg.threads >= 1, "mc.threads", "must be >= 1");
  require(std::isfinite(cfg.snr_threshold_db), "mimo.snr_threshold_db", "must be finite");

  if (sweep_required || cfg.sweep_points > 0) {
    require(cfg.sweep_points >= 1, "sweep.points", "must be >= 1");
    require(std::isfinite(cfg.sweep_start) && std::isfinite(cfg.sweep_stop), "sweep.start",
            "sweep range must be finite");
    if (cfg.sweep_points > 1)
      require(cfg.sweep_stop > cfg.sweep_start, "sweep.stop", "must exceed sweep.start");
    if (cfg.sweep_log) require(cfg.sweep_start > 0.0, "sweep.start", "log spacing needs > 0");
    if (cfg.sweep_axis == SweepAxis::Absorption)
      require(cfg.sweep_start >= 0.0, "sweep.start", "absorption sweep needs >= 0");
    else
      require(cfg.sweep_start > 0.0, "sweep.start", "must be > 0 for this axis");
  }
}

std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&kv](const std::string& k, const std::string& v) { kv.emplace_back(k, v); };
  auto fmt_orient = [](const std::optional<Eigen::Vector3d>& o) {
    if (!o) return std::string("random");
    return format_double((*o)(0)) + "," + format_double((*o)(1)) + "," + format_double((*o)(2));
  };
  add("link.frequency_hz", format_double(cfg.frequency_hz));
  add("link.distance_m", format_double(cfg.distance_m));
  add("link.transmit_power_w", format_double(cfg.transmit_power_w));
  add("link.noise_floor_dbm", format_double(cfg.noise_floor_dbm));
  add("link.reference_bandwidth_hz", format_double(cfg.reference_bandwidth_hz));
  add("medium.mixture", cfg.mixture_path.empty() ? "(none)" : cfg.mixture_path);
  add("medium.spectra_dir", cfg.spectra_dir.empty() ? "(none)" : cfg.spectra_dir);
  add("medium.absorption_override",
      cfg.absorption_override ? format_double(*cfg.absorption_override) : "(none)");
  add("array.tx_count", std::to_string(cfg.tx_count));
  add("array.rx_count", std::to_string(cfg.rx_count));
  add("array.spacing_wavelengths", format_double(cfg.spacing_wavelengths));
  add("array.spacing_reference_hz",
      cfg.spacing_reference_hz ? format_double(*cfg.spacing_reference_hz) : "(sweep frequency)");
  add("array.tx_orientation", fmt_orient(cfg.tx_orientation));
  add("array.rx_orientation", fmt_orient(cfg.rx_orientation));
  add("mc.trials", std::to_string(cfg.trials));
  add("mc.seed", format_u64(cfg.seed));
  add("mc.mode", cfg.mode.is_scattering() ? "scattering" : "noise");
  add("mc.phase_model", phase_model_name(cfg.mode.phase_model));
  {
    std::string s;
    for (std::size_t i = 0; i < cfg.schemes.size(); ++i) {
      if (i) s += ",";
      s += scheme_name(cfg.schemes[i]);
    }
    add("mc.schemes", s);
  }
  add("mc.snr_convention", snr_convention_name(cfg.snr_convention));
  add("mc.received_snr_db", format_double(cfg.received_snr_db));
  add("mc.threads", std::to_string(cfg.threads));
  add("mimo.snr_threshold_db", format_double(cfg.snr_threshold_db));
  add("sweep.axis", sweep_axis_name(cfg.sweep_axis));
  add("sweep.start", format_double(cfg.sweep_start));
  add("sweep.stop", format_double(cfg.sweep_stop));
  add("sweep.points", std::to_string(cfg.sweep_points));
  add("sweep.spacing", cfg.sweep_log ? "log" : "linear");
  return kv;
}

ReRadiationMode parse_mode(const std::string& name, PhaseModel pm) {
  if (name == "noise") return ReRadiationMode::noise_only();
  if (name == "scattering") return ReRadiationMode::scattering(pm);
  throw ValidationError("mc.mode", "expected 'noise' or 'scattering', got '" + name + "'");
}

PhaseModel parse_phase_model(const std::string& name) {
  if (name == "uniform") return PhaseModel::UniformPhase;
  if (name == "gaussian") return PhaseModel::ComplexGaussian;
  throw ValidationError("mc.phase_model", "expected 'uniform' or 'gaussian', got '" + name + "'");
}

std::vector<Scheme> parse_scheme_list(const std::string& csv) {
  std::vector<Scheme> out;
  for (const auto& raw : split(csv, ',')) {
    std::string name = trim(raw);
    if (name.empty()) throw ValidationError("mc.schemes", "empty scheme name in list");
    try {
      out.push_back(scheme_from_name(name));
    } catch (const Error&) {
      throw ValidationError("mc.schemes", "unknown scheme '" + name + "'");
    }
  }
  if (out.empty()) throw ValidationError("mc.schemes", "must name at least one scheme");
  return out;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "frequency") return SweepAxis::Frequency;
  if (name == "distance") return SweepAxis::Distance;
  if (name == "absorption") return SweepAxis::Absorption;
  if (name == "power") return SweepAxis::Power;
  throw ValidationError("sweep.axis",
                        "expected frequency|distance|absorption|power, got '" + name + "'");
}

SnrConvention parse_snr_convention(const std::string& name) {
  if (name == "fixed_transmit_power") return SnrConvention::FixedTransmitPower;
  if (name == "fixed_received_snr") return SnrConvention::FixedReceivedSnr;
  throw ValidationError("mc.snr_convention",
                        "expected fixed_transmit_power|fixed_received_snr, got '" + name + "'");
}

std::string sweep_axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Frequency: return "frequency";
    case SweepAxis::Distance: return "distance";
    case SweepAxis::Absorption: return "absorption";
    case SweepAxis::Power: return "power";
  }
  return "frequency";
}

std::string snr_convention_name(SnrConvention c) {
  return c == SnrConvention::FixedTransmitPower ? "fixed_transmit_power" : "fixed_received_snr";
}

std::string phase_model_name(PhaseModel pm) {
  return pm == PhaseModel::UniformPhase ? "uniform" : "gaussian";
}

} // namespace remimo
