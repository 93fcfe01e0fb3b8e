#include "optecot/config.hpp"

#include <algorithm>
#include <stdexcept>

#include "optecot/csv.hpp"
#include "optecot/rng.hpp"

namespace optecot {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config config;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? nl : nl - pos);
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected `key = value`, got: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key");
    }
    config.set(key, value);
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  return parse(read_text_file(path));
}

bool Config::has(const std::string& key) const { return find(key).has_value(); }

void Config::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : entries_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  entries_.emplace_back(key, value);
}

std::optional<std::string> Config::find(const std::string& key) const {
  for (const auto& [k, v] : entries_) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::string Config::get_string(const std::string& key) const {
  const auto v = find(key);
  if (!v) throw std::invalid_argument("config: missing required key `" + key + "`");
  return *v;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  return find(key).value_or(fallback);
}

double Config::get_double(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key `" + key + "` is not a number: " + v);
  }
}

double Config::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
  const std::string v = get_string(key);
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return parsed;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: key `" + key + "` is not an integer: " + v);
  }
}

long long Config::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_seed(const std::string& key, std::uint64_t fallback) const {
  if (!has(key)) return fallback;
  return static_cast<std::uint64_t>(get_int(key));
}

std::string Config::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) {
    out += k + " = " + v + "\n";
  }
  return out;
}

std::string Config::hash() const {
  std::vector<std::string> lines;
  lines.reserve(entries_.size());
  for (const auto& [k, v] : entries_) lines.push_back(k + "=" + v);
  std::sort(lines.begin(), lines.end());
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& line : lines) {
    h = fnv1a(line.data(), line.size(), h);
    h = fnv1a("\n", 1, h);
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

}  // namespace optecot
