#include "remimo/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace remimo {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text, const std::filesystem::path& path,
                    std::size_t line_no) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (trim(text.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                      ": not a number: '" + text + "'");
}

} // namespace

SpeciesSpectrum::SpeciesSpectrum(std::string species_id, std::vector<double> grid_hz,
                                 std::vector<double> coefficients_per_m,
                                 SpectrumMeta meta)
    : species_id_(std::move(species_id)),
      grid_(std::move(grid_hz)),
      coefficients_(std::move(coefficients_per_m)),
      meta_(meta) {
  if (grid_.size() < 2) throw EmptyGrid(species_id_ + ": grid needs at least 2 samples");
  if (grid_.size() != coefficients_.size())
    throw MalformedFile(species_id_ + ": grid/coefficient length mismatch");
  for (std::size_t i = 1; i < grid_.size(); ++i)
    if (!(grid_[i] > grid_[i - 1]))
      throw NonMonotoneGrid(species_id_ + ": grid not strictly increasing at sample " +
                            std::to_string(i));
  for (std::size_t i = 0; i < coefficients_.size(); ++i)
    if (!(coefficients_[i] >= 0.0))
      throw NegativeCoefficient(species_id_ + ": negative coefficient at sample " +
                                std::to_string(i));
}

double SpeciesSpectrum::value_at(double f_hz) const {
  if (f_hz < grid_.front() || f_hz > grid_.back())
    throw OutOfRange(species_id_ + ": frequency " + std::to_string(f_hz) +
                     " Hz outside tabulated span [" + std::to_string(grid_.front()) +
                     ", " + std::to_string(grid_.back()) + "]");
  auto it = std::lower_bound(grid_.begin(), grid_.end(), f_hz);
  std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  if (hi == 0 || grid_[hi] == f_hz) return coefficients_[hi];
  std::size_t lo = hi - 1;
  double t = (f_hz - grid_[lo]) / (grid_[hi] - grid_[lo]);
  return coefficients_[lo] + t * (coefficients_[hi] - coefficients_[lo]);
}

SpeciesSpectrum synth_line_spectrum(const std::string& species_id,
                                    const std::vector<LorentzLine>& lines,
                                    const std::vector<double>& grid_hz,
                                    SpectrumMeta meta) {
  if (grid_hz.empty()) throw EmptyGrid(species_id + ": empty synthesis grid");
  for (const auto& ln : lines) {
    if (!(ln.peak_per_m >= 0.0))
      throw NegativeCoefficient(species_id + ": negative line peak");
    if (!(ln.half_width_hz > 0.0))
      throw InvalidInput(species_id + ": non-positive line half-width");
  }
  std::vector<double> k(grid_hz.size(), 0.0);
  for (std::size_t i = 0; i < grid_hz.size(); ++i) {
    double f = grid_hz[i];
    double sum = 0.0;
    for (const auto& ln : lines) {
      double df = f - ln.center_hz;
      double hw2 = ln.half_width_hz * ln.half_width_hz;
      sum += ln.peak_per_m * hw2 / (df * df + hw2);
    }
    k[i] = sum;
  }
  return SpeciesSpectrum(species_id, grid_hz, std::move(k), meta);
}

GasMixture::GasMixture(std::map<std::string, double> entries, std::string label)
    : entries_(std::move(entries)), label_(std::move(label)) {
  for (const auto& [id, frac] : entries_)
    if (!(frac >= 0.0 && frac <= 1.0))
      throw InvalidInput("mixture '" + label_ + "': fraction for " + id +
                         " outside [0, 1]");
}

void AbsorptionDatabase::add(SpeciesSpectrum spectrum) {
  auto id = spectrum.species_id();
  spectra_.insert_or_assign(id, std::move(spectrum));
}

bool AbsorptionDatabase::contains(const std::string& species_id) const {
  return spectra_.count(species_id) != 0;
}

const SpeciesSpectrum& AbsorptionDatabase::at(const std::string& species_id) const {
  auto it = spectra_.find(species_id);
  if (it == spectra_.end()) throw UnknownSpecies("no spectrum for species " + species_id);
  return it->second;
}

AbsorptionDatabase AbsorptionDatabase::load_directory(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw DataError("spectra directory not found: " + dir.string());
  AbsorptionDatabase db;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) db.add(load_species_spectrum(p));
  if (db.size() == 0) throw DataError("no *.csv spectra in " + dir.string());
  return db;
}

SpeciesSpectrum load_species_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open spectrum file: " + path.string());
  SpectrumMeta meta;
  std::vector<double> grid, coeff;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      // Optional meta directives: "# temperature_k: 296", "# pressure_atm: 1".
      auto colon = t.find(':');
      if (colon != std::string::npos) {
        std::string key = trim(t.substr(1, colon - 1));
        std::string val = trim(t.substr(colon + 1));
        try {
          if (key == "temperature_k") meta.temperature_k = std::stod(val);
          if (key == "pressure_atm") meta.pressure_atm = std::stod(val);
        } catch (const std::exception&) {
          throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                              ": bad meta value '" + val + "'");
        }
      }
      continue;
    }
    if (!header_seen) {
      if (t != "frequency_hz,absorption_per_m")
        throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                            ": expected header 'frequency_hz,absorption_per_m'");
      header_seen = true;
      continue;
    }
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                          ": expected 'frequency,coefficient'");
    double f = parse_number(t.substr(0, comma), path, line_no);
    double k = parse_number(t.substr(comma + 1), path, line_no);
    if (!grid.empty() && !(f > grid.back()))
      throw NonMonotoneGrid(path.string() + ":" + std::to_string(line_no) +
                            ": frequency not strictly increasing");
    if (!(k >= 0.0))
      throw NegativeCoefficient(path.string() + ":" + std::to_string(line_no) +
                                ": negative absorption coefficient");
    grid.push_back(f);
    coeff.push_back(k);
  }
  if (!header_seen)
    throw MalformedFile(path.string() + ": missing header line");
  if (grid.size() < 2)
    throw MalformedFile(path.string() + ": needs at least 2 data rows");
  return SpeciesSpectrum(path.stem().string(), std::move(grid), std::move(coeff), meta);
}

GasMixture load_mixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open mixture file: " + path.string());
  std::map<std::string, double> entries;
  std::string line;
  std::size_t line_no = 0;
  double percent_sum = 0.0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto comma = t.find(',');
    if (comma == std::string::npos)
      throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                          ": expected 'species_id,percent'");
    std::string id = trim(t.substr(0, comma));
    double percent = parse_number(t.substr(comma + 1), path, line_no);
    if (id.empty())
      throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                          ": empty species id");
    if (!(percent >= 0.0 && percent <= 100.0))
      throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                          ": percent outside [0, 100]");
    if (!entries.emplace(id, percent / 100.0).second)
      throw MalformedFile(path.string() + ":" + std::to_string(line_no) +
                          ": duplicate species " + id);
    percent_sum += percent;
  }
  if (entries.empty()) throw MalformedFile(path.string() + ": no mixture rows");
  if (percent_sum < 99.0 || percent_sum > 101.0)
    throw MalformedFile(path.string() + ": mixture percentages sum to " +
                        std::to_string(percent_sum) + ", expected ~100");
  return GasMixture(std::move(entries), path.stem().string());
}

double mixture_coefficient(const AbsorptionDatabase& db, const GasMixture& mix,
                           double f_hz) {
  double k = 0.0;
  for (const auto& [id, fraction] : mix.entries())
    k += fraction * db.at(id).value_at(f_hz);
  return k;
}

} // namespace remimo
