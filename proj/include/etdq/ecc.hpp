#pragma once

#include "etdq/detection.hpp"
#include "etdq/model.hpp"

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace etdq {

enum class ActionKind { FillMissing, Overwrite, SpellFix, Canonicalize, ParseSplit, DateSplit, Rollback };
enum class ActionSource { ExtractionOracle, Dictionary, SpellChecker, SimilarityMatch, DateParser, RoleParser, VersionControl };

std::string_view to_string(ActionKind k);
std::string_view to_string(ActionSource s);
std::optional<ActionKind> action_kind_from_string(std::string_view s);
std::optional<ActionSource> action_source_from_string(std::string_view s);

struct CorrectionAction {
  FieldKey field = FieldKey::Title;
  ActionKind kind = ActionKind::FillMissing;
  std::optional<std::string> old_value;
  std::optional<std::string> new_value;  // absent only for a rollback to a missing value
  ActionSource source = ActionSource::ExtractionOracle;
  std::optional<std::string> role;       // ParseSplit
  std::optional<DateParts> parts;        // DateSplit

  bool operator==(const CorrectionAction&) const = default;
};

// Field values extracted from the document itself. Absent entries mean the
// extractor produced nothing for that field.
using ExtractedFields = std::array<std::optional<std::string>, kFieldCount>;

class ExtractionOracle {
 public:
  virtual ~ExtractionOracle() = default;
  // Throws ProviderError on I/O or format failure. Must tolerate concurrent calls.
  virtual ExtractedFields extract(const std::string& record_id) const = 0;
};

class MapOracle final : public ExtractionOracle {
 public:
  MapOracle() = default;
  void set(const std::string& id, FieldKey f, std::string value);
  ExtractedFields extract(const std::string& record_id) const override;
  std::size_t size() const { return values_.size(); }

 private:
  std::unordered_map<std::string, ExtractedFields> values_;
};

// A directory of "<id>.extracted.json" files (read per call) or a JSON-lines
// file of {"id": ..., "fields": {...}} (read once at construction). Keys are
// the lowercase field columns; empty or missing-sentinel values are ignored.
class SidecarOracle final : public ExtractionOracle {
 public:
  explicit SidecarOracle(std::filesystem::path path, MissingPolicy missing = {});
  ExtractedFields extract(const std::string& record_id) const override;

 private:
  std::filesystem::path path_;
  MissingPolicy missing_;
  bool directory_ = false;
  std::unordered_map<std::string, ExtractedFields> loaded_;
};

// Oracle that knows nothing.
class EmptyOracle final : public ExtractionOracle {
 public:
  ExtractedFields extract(const std::string&) const override { return {}; }
};

struct EccLog {
  std::vector<FieldKey> unresolved;
  std::vector<std::string> notes;  // one line per unresolved field or skipped step
};

// Each step mutates rec and returns the actions it applied.

std::vector<CorrectionAction> fill_missing(EtdRecord& rec, const std::vector<FieldDiagnosis>& diags,
                                           const ExtractedFields& oracle, EccLog& log);

// Handles IncorrectValue on every field except Department, and Unparseable
// on Year. No action when the oracle value is absent or equals the current
// value.
std::vector<CorrectionAction> overwrite_incorrect(EtdRecord& rec, const std::vector<FieldDiagnosis>& diags,
                                                  const ExtractedFields& oracle, EccLog& log);

std::optional<CorrectionAction> canonicalize_by_dictionary(FieldKey field, std::string_view value,
                                                           const AliasDictionary& d);

// token: lowercase, punctuation-free, length >= 3.
std::optional<std::string> correct_spelling(std::string_view token, const SpellChecker& words,
                                            kernels::Exec exec = kernels::Exec::Serial);

struct DepartmentResult {
  std::vector<CorrectionAction> actions;  // SpellFix..., then at most one Canonicalize
  std::optional<std::string> canonical;   // resolved canonical name
  std::string corrected;                  // value after spelling fixes
  std::optional<double> similarity;       // set when the similarity step ran
  std::vector<std::string> notes;
};

// Strip suffix and boilerplate, fix spellings, exact lookup, then cosine
// similarity against the canonical names (accepted at >= threshold).
DepartmentResult canonicalize_department(std::string_view value, const Resources& r);

struct EccResult {
  EtdRecord record;
  std::vector<CorrectionAction> actions;
  EccLog log;
};

// Per field: oracle fill/overwrite, then spelling, canonicalization and
// role/date splitting of the resulting value. Diagnose-clean fields are never
// touched.
EccResult apply_ecc(const EtdRecord& rec, const std::vector<FieldDiagnosis>& diags, const Resources& r,
                    const ExtractionOracle& oracle);

// Provenance a field carries after an action of this kind.
Provenance provenance_after(ActionKind k);

}  // namespace etdq
