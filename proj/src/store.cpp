#include "etdq/store.hpp"

#include "etdq/errors.hpp"
#include "etdq/serialize.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace etdq {

std::string format_timestamp(std::chrono::system_clock::time_point t) {
  using namespace std::chrono;
  const auto ms = duration_cast<milliseconds>(t.time_since_epoch()).count();
  const auto secs = static_cast<std::time_t>(ms >= 0 ? ms / 1000 : (ms - 999) / 1000);
  const auto frac = static_cast<int>(ms - static_cast<long long>(secs) * 1000);
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d.%03dZ", tm.tm_year + 1900, tm.tm_mon + 1,
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec, frac);
  return buf;
}

std::string serialize_version(const RecordVersion& v) {
  json::ordered j;
  j["record_id"] = v.record_id;
  j["version"] = v.version;
  j["timestamp"] = v.timestamp;
  j["snapshot"] = json::snapshot_to_json(v.snapshot);
  auto summary = json::ordered::array();
  for (const auto& a : v.change_summary) summary.push_back(json::action_to_json(a));
  j["change_summary"] = std::move(summary);
  return j.dump();
}

RecordVersion parse_version(const std::string& line) {
  try {
    const auto j = json::ordered::parse(line);
    RecordVersion v;
    v.record_id = j.at("record_id").get<std::string>();
    v.version = j.at("version").get<int>();
    v.timestamp = j.at("timestamp").get<std::string>();
    v.snapshot = json::snapshot_from_json(v.record_id, j.at("snapshot"));
    for (const auto& a : j.at("change_summary")) v.change_summary.push_back(json::action_from_json(a));
    return v;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what());
  }
}

VersionStore::VersionStore(std::filesystem::path journal, Options options)
    : path_(std::move(journal)), options_(std::move(options)) {
  if (!options_.clock) options_.clock = [] { return std::chrono::system_clock::now(); };
  if (!options_.read_only) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    const auto lock_path = path_.string() + ".lock";
    lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (lock_fd_ < 0) throw StoreError("cannot open " + lock_path + ": " + std::strerror(errno));
    if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
      const int err = errno;
      ::close(lock_fd_);
      lock_fd_ = -1;
      if (err == EWOULDBLOCK) throw StoreBusy("journal " + path_.string() + " is locked by another writer");
      throw StoreError("cannot lock " + lock_path + ": " + std::strerror(err));
    }
    fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd_ < 0) {
      ::close(lock_fd_);
      throw StoreError("cannot open journal " + path_.string() + ": " + std::strerror(errno));
    }
  }
  try {
    load();
  } catch (...) {
    if (fd_ >= 0) ::close(fd_);
    if (lock_fd_ >= 0) ::close(lock_fd_);
    throw;
  }
}

VersionStore::~VersionStore() {
  if (fd_ >= 0) ::close(fd_);
  if (lock_fd_ >= 0) ::close(lock_fd_);  // releases the flock
}

void VersionStore::load() {
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    if (options_.read_only && std::filesystem::exists(path_)) throw StoreError("cannot read " + path_.string());
    return;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();

  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::size_t good_end = 0;
  while (pos < data.size()) {
    ++line_no;
    const auto nl = data.find('\n', pos);
    const bool complete = nl != std::string::npos;
    const std::string line = data.substr(pos, complete ? nl - pos : std::string::npos);
    RecordVersion v;
    try {
      v = parse_version(line);
    } catch (const Error& e) {
      if (!complete) {
        truncation_ = "line " + std::to_string(line_no) + " is incomplete (" + std::to_string(line.size()) +
                      " bytes dropped)";
        break;
      }
      throw StoreError(path_.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (!complete) {
      // a parseable line that lost only its newline is still a torn write
      truncation_ = "line " + std::to_string(line_no) + " has no terminating newline";
      break;
    }
    auto& versions = records_[v.record_id];
    if (v.version != static_cast<int>(versions.size()) + 1) {
      throw StoreError(path_.string() + ":" + std::to_string(line_no) + ": version " + std::to_string(v.version) +
                       " of " + v.record_id + " breaks the sequence");
    }
    if (versions.empty()) order_.push_back(v.record_id);
    versions.push_back(std::move(v));
    ++total_versions_;
    pos = nl + 1;
    good_end = pos;
  }

  if (truncation_ && fd_ >= 0) {
    if (::ftruncate(fd_, static_cast<off_t>(good_end)) != 0) {
      throw StoreError("cannot truncate " + path_.string() + ": " + std::strerror(errno));
    }
  }
}

std::string VersionStore::next_timestamp(const std::string& record_id) {
  auto ts = format_timestamp(options_.clock());
  const auto it = records_.find(record_id);
  if (it != records_.end() && !it->second.empty() && ts < it->second.back().timestamp) {
    ts = it->second.back().timestamp;  // clock went backwards; keep history ordered
  }
  return ts;
}

void VersionStore::append(RecordVersion v) {
  if (options_.read_only) throw StoreError("store opened read-only");
  const auto line = serialize_version(v) + "\n";
  const off_t before = ::lseek(fd_, 0, SEEK_END);
  std::size_t written = 0;
  while (written < line.size()) {
    const auto n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      if (before >= 0 && ::ftruncate(fd_, before) != 0) {
        // the write error below is the one worth reporting
      }
      throw StoreError("journal write failed: " + std::string(std::strerror(err)));
    }
    written += static_cast<std::size_t>(n);
  }
  if (options_.durable && ::fdatasync(fd_) != 0) {
    throw StoreError("journal sync failed: " + std::string(std::strerror(errno)));
  }
  auto& versions = records_[v.record_id];
  if (versions.empty()) order_.push_back(v.record_id);
  versions.push_back(std::move(v));
  ++total_versions_;
}

std::optional<RecordVersion> VersionStore::commit(const EtdRecord& rec, const std::vector<CorrectionAction>& actions) {
  if (rec.id().empty()) throw std::invalid_argument("record id must be non-empty");
  const auto it = records_.find(rec.id());
  const bool known = it != records_.end();
  if (!known && !actions.empty()) {
    throw std::invalid_argument("first version of " + rec.id() + " must be an ingestion snapshot without actions");
  }
  if (known && actions.empty()) return std::nullopt;
  RecordVersion v{rec.id(), known ? static_cast<int>(it->second.size()) + 1 : 1, next_timestamp(rec.id()), rec,
                  actions};
  append(v);
  return v;
}

const std::vector<RecordVersion>& VersionStore::history(const std::string& record_id) const {
  const auto it = records_.find(record_id);
  if (it == records_.end()) throw NotFound("unknown record '" + record_id + "'");
  return it->second;
}

const RecordVersion& VersionStore::version(const std::string& record_id, int v) const {
  const auto& h = history(record_id);
  if (v < 1 || v > static_cast<int>(h.size())) {
    throw NotFound("record '" + record_id + "' has no version " + std::to_string(v));
  }
  return h[static_cast<std::size_t>(v - 1)];
}

const RecordVersion* VersionStore::latest(const std::string& record_id) const {
  const auto it = records_.find(record_id);
  return it == records_.end() ? nullptr : &it->second.back();
}

std::vector<std::string> VersionStore::ids() const { return order_; }

std::vector<FieldDelta> VersionStore::diff(const std::string& record_id, int a, int b) const {
  const auto& va = version(record_id, a).snapshot;
  const auto& vb = version(record_id, b).snapshot;
  std::vector<FieldDelta> out;
  for (const auto f : kAllFields) {
    if (va.raw(f) != vb.raw(f)) out.push_back({f, va.raw(f), vb.raw(f)});
  }
  return out;
}

EtdRecord VersionStore::rollback(const std::string& record_id, int target_version) {
  const EtdRecord target = version(record_id, target_version).snapshot;
  const EtdRecord current = records_.at(record_id).back().snapshot;
  std::vector<CorrectionAction> summary;
  for (const auto f : kAllFields) {
    if (current.field(f) == target.field(f)) continue;
    summary.push_back({f, ActionKind::Rollback, current.raw(f), target.raw(f), ActionSource::VersionControl, {}, {}});
  }
  RecordVersion v{record_id, static_cast<int>(records_.at(record_id).size()) + 1, next_timestamp(record_id), target,
                  std::move(summary)};
  append(std::move(v));
  return target;
}

}  // namespace etdq
