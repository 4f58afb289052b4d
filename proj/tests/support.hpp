#pragma once

#include "etdq/config.hpp"
#include "etdq/detection.hpp"

#include <filesystem>
#include <string>

#include <unistd.h>

namespace etdq::testing {

inline std::filesystem::path data_dir() { return ETDQ_DATA_DIR; }
inline std::filesystem::path benchmark_dir() { return data_dir() / "benchmark"; }

// Shipped configuration, loaded once per test binary.
inline const Resources& shipped() {
  static const Resources r = load_resources(PipelineConfig::defaults(data_dir()));
  return r;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("etdq-test-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace etdq::testing
