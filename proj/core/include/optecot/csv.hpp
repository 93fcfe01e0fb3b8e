#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace optecot {

/// Shortest round-trip decimal form (std::to_chars). Every CSV and SVG
/// emitted by the library goes through this so reruns are byte-identical.
std::string format_double(double v);

std::string format_int(long long v);

/// Minimal CSV writer: caller supplies fully formatted cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::string header);

  void row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::string text_;
  std::size_t columns_;
};

/// Parsed CSV: header names plus rows of string cells. No quoting support;
/// none of the formats written here need it.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace optecot
