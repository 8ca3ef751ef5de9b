#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rolevec {

/// Ordered key=value record serialized next to every output, so a run can
/// be reproduced from the manifest alone.
class Manifest {
 public:
  void set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries_)
      if (k == key) {
        v = value;
        return;
      }
    entries_.emplace_back(key, value);
  }

  template <typename T>
  void set(const std::string& key, const T& value) {
    std::ostringstream ss;
    ss << value;
    set(key, ss.str());
  }

  bool has(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return true;
    return false;
  }

  std::string get(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return v;
    throw std::invalid_argument("manifest key missing: " + key);
  }

  std::string get_or(const std::string& key, const std::string& fallback) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return v;
    return fallback;
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    for (const auto& [k, v] : entries_) out << k << "=" << v << "\n";
  }

  static Manifest load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest: " + path);
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("malformed manifest line: " + line);
      m.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return m;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace rolevec
