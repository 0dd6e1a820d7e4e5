#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace remimo {

/// Shortest round-trip decimal form via std::to_chars; locale-independent and
/// byte-stable for a given double. Infinities print as "inf"/"-inf".
std::string format_double(double v);

std::string format_u64(std::uint64_t v);

/// Rows are plain pre-formatted cells; the writer only joins and frames them.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells);
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& header() const { return header_; }

  std::string to_string() const;

  /// Writes to a temp file in the target directory, then renames into place,
  /// so readers never observe a partial file.
  void write_atomic(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Write arbitrary text atomically (temp file + rename).
void write_text_atomic(const std::filesystem::path& path, const std::string& text);

/// Minimal reader for round-trip checks: splits a CSV file into cell rows
/// (first row is the header). No quoting support — the emitted schemas never
/// need it.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);

} // namespace remimo
