#pragma once

#include "etdq/dates.hpp"
#include "etdq/detection.hpp"
#include "etdq/dictionaries.hpp"
#include "etdq/ecc.hpp"
#include "etdq/model.hpp"
#include "etdq/rng.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace etdq {

struct GoldLabel {
  std::string record_id;
  FieldKey field = FieldKey::Title;
  std::string true_value;
  std::optional<ErrorKind> error_kind;  // absent: the field was left clean

  bool operator==(const GoldLabel&) const = default;
};

// CSV with header record_id,field,true_value,error_kind. Throws ParseError
// on a bad header, unknown field or kind, or a repeated (record_id, field).
std::vector<GoldLabel> parse_gold(std::string_view csv);
std::vector<GoldLabel> read_gold(const std::filesystem::path& path);
std::string format_gold(const std::vector<GoldLabel>& labels);

struct Counts {
  std::size_t tp = 0, fp = 0, fn = 0;
  bool operator==(const Counts&) const = default;
};

struct Prf {
  double precision = 0, recall = 0, f1 = 0;
};

// 0/0 -> 0 throughout.
Prf prf(const Counts& c);
double f1_from(double precision, double recall);

using FieldCounts = std::array<Counts, kFieldCount>;

struct DiagnosedField {
  std::string record_id;
  FieldKey field;
  ErrorKind kind;
};

// A (record, field) is positive when it has a label with an error kind.
// tp: diagnosed and positive; fp: diagnosed, not positive; fn: positive, not
// diagnosed. Kind mismatches still count as tp.
FieldCounts score_detection(const std::vector<DiagnosedField>& diagnosed, const std::vector<GoldLabel>& labels);

struct RecordOutcome {
  EtdRecord record;  // after correction
  std::vector<CorrectionAction> actions;
};

// A field is corrected when it has actions and its final value matches the
// gold value (normalize_surface on both sides; Year on parsed parts).
// Positive fields: tp if corrected, fn otherwise, plus fp when acted on but
// wrong. Other fields: fp when acted on and not matching a clean gold value.
FieldCounts score_ecc(const std::vector<RecordOutcome>& outcomes, const std::vector<GoldLabel>& labels,
                      DateOrder order = DateOrder::MonthFirst);

bool values_match(FieldKey field, const std::optional<std::string>& value, const std::string& gold,
                  DateOrder order = DateOrder::MonthFirst);

struct EvalReport {
  FieldCounts ed{};
  FieldCounts ecc{};
};

// Fixed-width table in field order, three decimals.
std::string format_report_text(const EvalReport& report);
std::string format_report_json(const EvalReport& report);

// Throws std::invalid_argument for an empty list. Counts are summed.
EvalReport combine_reports(const std::vector<EvalReport>& reports);

struct FieldNoise {
  double drop = 0, typo = 0, acronymize = 0, wrong_value = 0;
};

struct NoiseConfig {
  std::array<FieldNoise, kFieldCount> fields{};
  std::uint64_t seed = 0;

  // Throws std::invalid_argument when a probability is outside [0, 1] or a
  // field's probabilities sum above 1.
  void validate() const;
};

struct NoiseDictionaries {
  const AliasDictionary* universities = nullptr;
  const AliasDictionary* degrees = nullptr;
  const AliasDictionary* departments = nullptr;
};

struct NoiseResult {
  std::vector<EtdRecord> records;
  std::vector<GoldLabel> labels;  // one per corrupted field
  std::vector<std::string> notes; // corruptions that fell back to no-op
};

// One categorical draw per non-missing field: drop, typo, acronymize,
// wrong_value or nothing.
NoiseResult inject_noise(const std::vector<EtdRecord>& gold, const NoiseConfig& cfg, const NoiseDictionaries& dicts);

// One random Damerau edit on one token of at least 4 letters. None when no
// token qualifies.

std::optional<std::string> random_typo(std::string_view value, Rng& rng);

namespace sample {
struct Random {
  std::size_t n = 0;
};
struct ByUniversity {
  std::size_t universities = 0, per_university = 0;
};
struct ByYear {
  int first = 0, last = 0;
  std::size_t per_year = 0;
};
struct ByDepartment {
  std::size_t stem = 0, non_stem = 0, per_department = 0;
};
struct ByDegree {
  std::size_t degrees = 0, per_degree = 0;
};
}  // namespace sample

using SampleCriterion =
    std::variant<sample::Random, sample::ByUniversity, sample::ByYear, sample::ByDepartment, sample::ByDegree>;

// "random:100", "university:10:10", "year:2010-2019:10", "department:6:4:10",
// "degree:5:20". Throws ConfigError.
SampleCriterion parse_criterion(std::string_view spec);

struct SampleContext {
  const AliasDictionary* universities = nullptr;  // strata by canonical name when given
  const AliasDictionary* degrees = nullptr;
  const AliasDictionary* departments = nullptr;   // keyed by department_key
  std::vector<std::string> stem_departments;      // canonical names
  DateOrder date_order = DateOrder::MonthFirst;
};

struct SampleResult {
  std::vector<EtdRecord> records;  // input order
  std::vector<std::string> notes;  // strata that were too small
};

// Records whose stratum value is missing are never drawn. Throws
// std::invalid_argument on an empty corpus.
SampleResult stratified_sample(const std::vector<EtdRecord>& records, const SampleCriterion& criterion,
                               std::uint64_t seed, const SampleContext& ctx = {});

// Union by id, keeping first occurrences, in the order given.
std::vector<EtdRecord> combine_samples(const std::vector<std::vector<EtdRecord>>& samples);

}  // namespace etdq
