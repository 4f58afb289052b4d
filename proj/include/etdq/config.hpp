#pragma once

#include "etdq/dates.hpp"
#include "etdq/detection.hpp"
#include "etdq/dictionaries.hpp"

#include <chrono>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace etdq {

struct PipelineConfig {
  std::filesystem::path universities;
  std::filesystem::path degrees;
  std::filesystem::path departments;
  std::filesystem::path words;
  std::filesystem::path title_model;
  std::optional<std::filesystem::path> title_idf;  // otherwise IDF comes from the input titles
  std::optional<std::filesystem::path> oracle;
  std::optional<std::filesystem::path> journal;
  std::optional<std::filesystem::path> stem_departments;
  double similarity_threshold = 0.90;
  YearRange years;
  DateOrder date_order = DateOrder::MonthFirst;
  std::vector<std::string> missing_sentinels = kDefaultMissingSentinels;
  std::optional<std::string> remote_judge_url;
  std::chrono::milliseconds remote_judge_timeout{5000};
  bool journal_fsync = false;

  // Shipped data files under `data_dir`.
  static PipelineConfig defaults(const std::filesystem::path& data_dir);

  // JSON object; relative paths resolve against the file's directory and
  // unset keys keep `base` values. Throws ConfigError.
  static PipelineConfig load(const std::filesystem::path& path, const PipelineConfig& base);

  // Checks ranges and that every referenced input file exists (the journal
  // may be created). Throws ConfigError.
  void validate() const;
};

// Loads dictionaries, word list, title model and judge. Throws ConfigError
// wrapping any load failure.
Resources load_resources(const PipelineConfig& cfg);

std::vector<std::string> load_name_list(const std::filesystem::path& path);

}  // namespace etdq
