// Regenerates the bundled absorption spectra under data/spectra. The bundled
// files are synthetic Lorentzian line sets shaped to reproduce the well-known
// O2 (60/120 GHz) and H2O (180 GHz + sub-THz) resonances with magnitudes that
// exercise the capacity phenomena; they are not radiometry-grade exports.
// Real line-by-line exports in the same two-column format drop in unchanged.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "remimo/csvio.hpp"
#include "remimo/spectra.hpp"

namespace {

using remimo::LorentzLine;

std::vector<double> dense_grid() {
  // 20-800 GHz in 0.1 GHz steps; every frequency the bundled configs visit
  // lands exactly on a node, so interpolation is exact there.
  std::vector<double> g;
  g.reserve(7801);
  for (int i = 0; i <= 7800; ++i) g.push_back(2.0e10 + 1.0e8 * static_cast<double>(i));
  return g;
}

std::string render(const std::string& species, const std::vector<double>& grid,
                   const std::vector<double>& values) {
  std::string out;
  out += "# " + species + " molecular absorption coefficient (synthetic Lorentzian line set)\n";
  out += "# temperature_k: 296\n";
  out += "# pressure_atm: 1\n";
  out += "frequency_hz,absorption_per_m\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out += remimo::format_double(grid[i]) + "," + remimo::format_double(values[i]) + "\n";
  return out;
}

void write_line_species(const std::filesystem::path& dir, const std::string& species,
                        const std::vector<LorentzLine>& lines, double floor_per_m) {
  std::vector<double> grid = dense_grid();
  remimo::SpeciesSpectrum spec = remimo::synth_line_spectrum(species, lines, grid);
  std::vector<double> values = spec.coefficients();
  for (double& v : values) v += floor_per_m;
  remimo::write_text_atomic(dir / (species + ".csv"), render(species, grid, values));
}

void write_flat_species(const std::filesystem::path& dir, const std::string& species,
                        double level_per_m) {
  std::vector<double> grid = {2.0e10, 8.0e11};
  std::vector<double> values = {level_per_m, level_per_m};
  remimo::write_text_atomic(dir / (species + ".csv"), render(species, grid, values));
}

} // namespace

int main(int argc, char** argv) {
  std::filesystem::path outdir = argc > 1 ? argv[1] : "data/spectra";
  std::filesystem::create_directories(outdir);

  const std::vector<LorentzLine> h2o_lines = {
      {2.22e10, 0.05, 2.0e9},  // 22 GHz water line, weak
      {1.80e11, 10.0, 2.0e9},  // 180 GHz resonance
      {3.25e11, 40.0, 1.25e9}, // sub-THz line cluster
      {3.80e11, 80.0, 1.25e9},
      {4.50e11, 120.0, 1.25e9},
      {5.50e11, 154.0, 1.25e9},
      {7.50e11, 200.0, 1.25e9},
  };
  const std::vector<LorentzLine> o2_lines = {
      {6.0e10, 1.0, 1.2e9},  // 60 GHz oxygen complex
      {1.2e11, 0.08, 2.0e9}, // 120 GHz line, weak
  };

  write_line_species(outdir, "h2o", h2o_lines, 1e-7);
  write_line_species(outdir, "o2", o2_lines, 1e-7);
  for (const char* s : {"co2", "o3", "n2o", "co", "ch4", "n2"})
    write_flat_species(outdir, s, 1e-9);

  std::printf("wrote 8 species spectra to %s\n", outdir.string().c_str());
  return 0;
}
