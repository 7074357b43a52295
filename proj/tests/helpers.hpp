#pragma once

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "foragesim/env.hpp"

namespace fstest {

using namespace foragesim;

inline PageVersion page(VersionId vid, UrlId url, double t, std::vector<double> state,
                        std::vector<UrlId> links) {
  return PageVersion{vid, url, t, std::move(state), std::move(links)};
}

// Hand-built environment around explicit events. k is taken from the first
// event's state vector; the hub list and centroids are minimal but valid.
inline Environment tiny_env(std::vector<EnvEvent> events, double download_time = 1.0) {
  EnvConfig cfg;
  cfg.k = events.empty() ? 1 : static_cast<int>(events.front().version.state.size());
  cfg.num_topics = 1;
  cfg.initial_pages = 1;
  cfg.hub_count = 1;
  cfg.download_time = download_time;
  return Environment(cfg, std::move(events),
                     {std::vector<double>(static_cast<std::size_t>(cfg.k), 0.0)}, {0});
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Unique scratch directory per test run, removed on destruction.
struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("foragesim_test_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace fstest
