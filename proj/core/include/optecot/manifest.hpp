#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace optecot {

/// Collects the artifacts an experiment writes and serializes them to
/// `manifest.json` in the output directory, with the config hash and any
/// notes (for example the curve-averaging policy). Paths are stored relative
/// to the output directory and sorted, so reruns are byte-identical.
class Manifest {
 public:
  explicit Manifest(std::filesystem::path out_dir);

  /// Writes `text` under the output directory and records the artifact.
  void write_artifact(const std::string& relative_path, const std::string& text);

  void set_field(const std::string& key, const std::string& value);
  void add_note(const std::string& note);

  const std::filesystem::path& out_dir() const { return out_dir_; }

  /// Writes the manifest json (not listed as an artifact itself).
  void save(const std::string& filename = "manifest.json") const;

 private:
  std::filesystem::path out_dir_;
  std::vector<std::string> artifacts_;
  std::vector<std::pair<std::string, std::string>> fields_;
  std::vector<std::string> notes_;
};

}  // namespace optecot
