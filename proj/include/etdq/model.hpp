#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etdq {

enum class FieldKey { Title, Author, Advisor, University, Year, Degree, Department };

inline constexpr std::size_t kFieldCount = 7;

inline constexpr std::array<FieldKey, kFieldCount> kAllFields = {
    FieldKey::Title,  FieldKey::Author, FieldKey::Advisor,   FieldKey::University,
    FieldKey::Year,   FieldKey::Degree, FieldKey::Department};

constexpr std::size_t index_of(FieldKey k) { return static_cast<std::size_t>(k); }

// Dublin Core / ETD-MS element name, e.g. "dc.title".
std::string_view dc_field_name(FieldKey key);

// Lowercase column name used in CSV headers, JSON keys and the journal.
std::string_view field_column(FieldKey key);
std::optional<FieldKey> field_from_column(std::string_view column);

enum class Provenance { Original, Extracted, Corrected, Canonicalized };

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view s);

struct DateParts {
  int year = 0;
  std::optional<int> month;  // 1-12
  std::optional<int> day;    // only present when month is

  bool operator==(const DateParts&) const = default;
};

struct FieldValue {
  std::optional<std::string> raw;
  Provenance provenance = Provenance::Original;
  std::optional<std::string> role;    // Advisor only
  std::optional<DateParts> parts;     // Year only

  FieldValue() = default;
  explicit FieldValue(std::optional<std::string> r) : raw(std::move(r)) {}

  bool operator==(const FieldValue&) const = default;
};

// One scholarly record. The fixed-size field array makes "all seven keys
// present" hold by construction; absence is an empty raw value.
class EtdRecord {
 public:
  EtdRecord() = default;
  explicit EtdRecord(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }
  void set_id(std::string id) { id_ = std::move(id); }

  FieldValue& field(FieldKey k) { return fields_[index_of(k)]; }
  const FieldValue& field(FieldKey k) const { return fields_[index_of(k)]; }

  const std::optional<std::string>& raw(FieldKey k) const { return field(k).raw; }
  void set_raw(FieldKey k, std::optional<std::string> v) { field(k).raw = std::move(v); }

  bool operator==(const EtdRecord&) const = default;

 private:
  std::string id_;
  std::array<FieldValue, kFieldCount> fields_{};
};

// Missing-value policy: absent, whitespace-only, or a case-insensitive
// sentinel string.
class MissingPolicy {
 public:
  MissingPolicy();
  explicit MissingPolicy(std::vector<std::string> sentinels);

  bool is_missing(const std::optional<std::string>& raw) const;
  bool is_missing(const FieldValue& v) const { return is_missing(v.raw); }

  const std::vector<std::string>& sentinels() const { return sentinels_; }

 private:
  std::vector<std::string> sentinels_;  // stored lowercase
};

inline const std::vector<std::string> kDefaultMissingSentinels = {"null", "none", "n/a", "na"};

bool is_missing(const FieldValue& v);

}  // namespace etdq
