#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "remimo/experiments.hpp"

namespace remimo {

/// Config file format: one `section.key = value` per line, full-line `#`
/// comments, blank lines ignored. Unknown or duplicate keys are errors, so a
/// typo can never silently fall back to a default. Relative paths are
/// resolved against the config file's directory.
ExperimentConfig parse_config(const std::filesystem::path& path);

/// Same grammar from an in-memory string; `base_dir` anchors relative paths.
ExperimentConfig parse_config_text(const std::string& text,
                                   const std::filesystem::path& base_dir,
                                   const std::string& origin = "<config>");

/// Cross-field coherence checks run after CLI overrides are applied.
void validate_config(const ExperimentConfig& cfg, bool sweep_required);

/// The fully resolved key/value view of a config (defaults included), in
/// stable order; this is what the run manifest echoes.
std::vector<std::pair<std::string, std::string>> config_echo(const ExperimentConfig& cfg);

// Shared value vocabularies (config values and CLI flag arguments).
ReRadiationMode parse_mode(const std::string& name, PhaseModel pm);
PhaseModel parse_phase_model(const std::string& name);
std::vector<Scheme> parse_scheme_list(const std::string& csv);
SweepAxis parse_sweep_axis(const std::string& name);
SnrConvention parse_snr_convention(const std::string& name);
std::string sweep_axis_name(SweepAxis axis);
std::string snr_convention_name(SnrConvention c);
std::string phase_model_name(PhaseModel pm);

} // namespace remimo
