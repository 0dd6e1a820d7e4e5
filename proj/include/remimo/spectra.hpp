#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "remimo/errors.hpp"

namespace remimo {

struct SpectrumMeta {
  double temperature_k = 296.0;
  double pressure_atm = 1.0;
};

/// Tabulated absorption coefficient of one molecular species on a strictly
/// increasing frequency grid. Immutable after construction.
class SpeciesSpectrum {
 public:
  SpeciesSpectrum(std::string species_id, std::vector<double> grid_hz,
                  std::vector<double> coefficients_per_m, SpectrumMeta meta = {});

  const std::string& species_id() const { return species_id_; }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  const SpectrumMeta& meta() const { return meta_; }
  std::size_t size() const { return grid_.size(); }
  double min_frequency() const { return grid_.front(); }
  double max_frequency() const { return grid_.back(); }

  /// Linear interpolation on the grid; exact at grid samples.
  /// Throws OutOfRange outside [min_frequency, max_frequency].
  double value_at(double f_hz) const;

 private:
  std::string species_id_;
  std::vector<double> grid_;
  std::vector<double> coefficients_;
  SpectrumMeta meta_;
};

/// One Lorentzian absorption line: peak * hw^2 / ((f - center)^2 + hw^2).
struct LorentzLine {
  double center_hz;
  double peak_per_m;
  double half_width_hz;
};

/// Deterministic synthetic spectrum built from a Lorentzian line set,
/// evaluated on the given grid.
SpeciesSpectrum synth_line_spectrum(const std::string& species_id,
                                    const std::vector<LorentzLine>& lines,
                                    const std::vector<double>& grid_hz,
                                    SpectrumMeta meta = {});

/// Mole fractions per species. Fractions, not percent. Each entry must lie in
/// [0, 1]; partial mixtures (summing below 1) are legal for composition and
/// property checks — full-atmosphere sum validation happens in load_mixture.
class GasMixture {
 public:
  GasMixture(std::map<std::string, double> entries, std::string label);

  const std::map<std::string, double>& entries() const { return entries_; }
  const std::string& label() const { return label_; }

 private:
  std::map<std::string, double> entries_;
  std::string label_;
};

class AbsorptionDatabase {
 public:
  void add(SpeciesSpectrum spectrum);
  bool contains(const std::string& species_id) const;
  const SpeciesSpectrum& at(const std::string& species_id) const;
  std::size_t size() const { return spectra_.size(); }

  /// Loads every *.csv in a directory as one species (id = file stem).
  static AbsorptionDatabase load_directory(const std::filesystem::path& dir);

 private:
  std::map<std::string, SpeciesSpectrum> spectra_;
};

/// Species file format: UTF-8 text, '#' comment lines, header
/// `frequency_hz,absorption_per_m`, CSV rows with strictly increasing
/// frequencies. Optional meta comments `# temperature_k: <v>` and
/// `# pressure_atm: <v>`. Species id is the file stem.
SpeciesSpectrum load_species_spectrum(const std::filesystem::path& path);

/// Mixture file format: lines `species_id,percent`, percent in [0, 100];
/// '#' comments allowed. Percentages are converted to fractions and their sum
/// must land in [99, 101]% (full-atmosphere tables). Label is the file stem.
GasMixture load_mixture(const std::filesystem::path& path);

/// Medium absorption coefficient: sum over mixture entries of
/// fraction * species coefficient at f. Every referenced species must exist
/// in the database and cover f.
double mixture_coefficient(const AbsorptionDatabase& db, const GasMixture& mix,
                           double f_hz);

} // namespace remimo
