#include "optecot/manifest.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "optecot/csv.hpp"

namespace optecot {

Manifest::Manifest(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {
  std::filesystem::create_directories(out_dir_);
}

void Manifest::write_artifact(const std::string& relative_path,
                              const std::string& text) {
  write_text_file(out_dir_ / relative_path, text);
  artifacts_.push_back(relative_path);
}

void Manifest::set_field(const std::string& key, const std::string& value) {
  for (auto& [k, v] : fields_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  fields_.emplace_back(key, value);
}

void Manifest::add_note(const std::string& note) { notes_.push_back(note); }

void Manifest::save(const std::string& filename) const {
  nlohmann::ordered_json doc;
  for (const auto& [k, v] : fields_) doc[k] = v;
  std::vector<std::string> sorted = artifacts_;
  std::sort(sorted.begin(), sorted.end());
  doc["artifacts"] = sorted;
  if (!notes_.empty()) doc["notes"] = notes_;
  write_text_file(out_dir_ / filename, doc.dump(2) + "\n");
}

}  // namespace optecot
