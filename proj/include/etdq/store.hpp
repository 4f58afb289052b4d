#pragma once

#include "etdq/ecc.hpp"
#include "etdq/model.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace etdq {

struct RecordVersion {
  std::string record_id;
  int version = 0;
  std::string timestamp;  // ISO-8601 UTC, millisecond precision, "Z"
  EtdRecord snapshot;
  std::vector<CorrectionAction> change_summary;

  bool operator==(const RecordVersion&) const = default;
};

struct FieldDelta {
  FieldKey field;
  std::optional<std::string> a;
  std::optional<std::string> b;

  bool operator==(const FieldDelta&) const = default;
};

std::string format_timestamp(std::chrono::system_clock::time_point t);

// One journal line (no trailing newline) and its inverse.
std::string serialize_version(const RecordVersion& v);
RecordVersion parse_version(const std::string& line);

// Append-only JSON-lines journal of full-record snapshots. A writable store
// holds an exclusive lock on "<journal>.lock" for its lifetime; a second
// writer gets StoreBusy. Not thread-safe: callers funnel commits through one
// thread.
class VersionStore {
 public:
  using Clock = std::function<std::chrono::system_clock::time_point()>;

  struct Options {
    bool read_only = false;
    bool durable = false;  // fdatasync after every append
    Clock clock;           // defaults to system_clock::now
  };

  explicit VersionStore(std::filesystem::path journal, Options options);
  explicit VersionStore(std::filesystem::path journal) : VersionStore(std::move(journal), Options{}) {}
  ~VersionStore();
  VersionStore(const VersionStore&) = delete;
  VersionStore& operator=(const VersionStore&) = delete;

  // New id: version 1 with an empty summary (throws std::invalid_argument if
  // actions are given). Known id: none for an empty action list, otherwise
  // the next version.
  std::optional<RecordVersion> commit(const EtdRecord& rec, const std::vector<CorrectionAction>& actions);

  // Appends a copy of the target snapshot as a new version whose summary
  // lists the fields that change. Throws NotFound.
  EtdRecord rollback(const std::string& record_id, int target_version);

  // Throws NotFound for unknown ids or versions.
  const std::vector<RecordVersion>& history(const std::string& record_id) const;
  const RecordVersion& version(const std::string& record_id, int v) const;
  std::vector<FieldDelta> diff(const std::string& record_id, int a, int b) const;

  bool contains(const std::string& record_id) const { return records_.contains(record_id); }
  const RecordVersion* latest(const std::string& record_id) const;
  std::vector<std::string> ids() const;  // first-commit order
  std::size_t record_count() const { return records_.size(); }
  std::size_t version_count() const { return total_versions_; }

  // Set when the journal ended in an incomplete line at open. Writable stores
  // cut that line off.
  const std::optional<std::string>& truncation() const { return truncation_; }
  const std::filesystem::path& path() const { return path_; }

 private:
  void load();
  void append(RecordVersion v);
  std::string next_timestamp(const std::string& record_id);

  std::filesystem::path path_;
  Options options_;
  int fd_ = -1;
  int lock_fd_ = -1;
  std::map<std::string, std::vector<RecordVersion>> records_;
  std::vector<std::string> order_;
  std::size_t total_versions_ = 0;
  std::optional<std::string> truncation_;
};

}  // namespace etdq
