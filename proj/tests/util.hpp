#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "rolevec/graph.hpp"

namespace testutil {

inline rolevec::Graph make_graph(const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::pair<std::string, std::string>> labelled;
  for (const auto& [u, v] : edges)
    labelled.emplace_back(std::to_string(u), std::to_string(v));
  return rolevec::Graph::build(labelled);
}

inline std::string data_path(const std::string& name) {
  return std::string(TEST_DATA_DIR) + "/" + name;
}

/// Unique scratch file removed at scope exit.
class TempFile {
 public:
  explicit TempFile(const std::string& stem) {
    static int counter = 0;
    path_ = (std::filesystem::temp_directory_path() /
             (stem + "." + std::to_string(::getpid()) + "." + std::to_string(counter++)))
                .string();
  }
  ~TempFile() { std::remove(path_.c_str()); }
  const std::string& path() const { return path_; }

  void write(const std::string& content) {
    std::ofstream out(path_);
    out << content;
  }

  std::string read() const {
    std::ifstream in(path_);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }

 private:
  std::string path_;
};

}  // namespace testutil
