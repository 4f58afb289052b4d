#pragma once

#include "etdq/dates.hpp"
#include "etdq/dictionaries.hpp"
#include "etdq/kernels.hpp"
#include "etdq/model.hpp"
#include "etdq/names.hpp"
#include "etdq/similarity.hpp"
#include "etdq/spelling.hpp"
#include "etdq/title.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etdq {

enum class ErrorKind { Missing, IncorrectValue, Misspelling, NonCanonical, Unparseable };

std::string_view to_string(ErrorKind k);
std::optional<ErrorKind> error_kind_from_string(std::string_view s);

struct Span {
  std::size_t begin = 0;  // byte offsets into the field value
  std::size_t end = 0;
  bool operator==(const Span&) const = default;
};

struct FieldDiagnosis {
  FieldKey field = FieldKey::Title;
  ErrorKind kind = ErrorKind::Missing;
  std::string detail;
  std::string detector;
  std::vector<Span> spans;

  bool operator==(const FieldDiagnosis&) const = default;
};

// Immutable inputs shared by detection and correction. Build once, then use
// from any number of threads.
struct Resources {
  AliasDictionary universities;
  AliasDictionary degrees;
  AliasDictionary departments;  // keyed by department_key
  std::shared_ptr<const SpellChecker> department_speller;
  IdfTable title_idf;
  TitleModel title_model;
  std::shared_ptr<const NameJudge> judge;
  std::shared_ptr<const SimilarityProvider> similarity;
  SimilarityIndex department_index;  // department keys, labelled by canonical
  YearRange years;
  DateOrder date_order = DateOrder::MonthFirst;
  MissingPolicy missing;
  double similarity_threshold = 0.90;
  kernels::Exec exec = kernels::Exec::Serial;
};

// Fills the speller, default judge, similarity provider and department index
// when they are unset.
void finish_resources(Resources& r);

// --- per-field detectors (value is non-missing) ---

std::optional<FieldDiagnosis> detect_title(std::string_view value, const Resources& r);

// Names are judged token by token; any OTHER token is an IncorrectValue with
// its span. Throws ProviderError when the judge fails.
std::optional<FieldDiagnosis> detect_person_name(FieldKey field, std::string_view value, const NameJudge& judge);

// Advisor values are split into name and role first. A bad name part is an
// IncorrectValue; a clean name carrying a role suffix is NonCanonical.
std::optional<FieldDiagnosis> detect_advisor(std::string_view value, const NameJudge& judge);

// University or Degree: CanonicalHit -> none, AliasHit -> NonCanonical,
// NotFound -> IncorrectValue.
std::optional<FieldDiagnosis> detect_dictionary_field(FieldKey field, std::string_view value,
                                                      const AliasDictionary& d);

// Per token (whitespace split, punctuation stripped, lowercased, length >= 3)
// unknown to the list: Misspelling if a known word is within distance 2,
// IncorrectValue otherwise.
std::vector<FieldDiagnosis> detect_department_spelling(std::string_view value, const SpellChecker& words,
                                                       kernels::Exec exec = kernels::Exec::Serial);

// Dictionary-aware department check. Values whose key is in the dictionary
// are clean when spelled exactly as the canonical and NonCanonical
// otherwise; unknown keys go through spelling detection, and if that finds
// nothing they are NonCanonical so the similarity matcher can try them.
std::vector<FieldDiagnosis> detect_department(std::string_view value, const Resources& r);

// Unparseable, IncorrectValue (outside range) or NonCanonical (parsed but
// not written as YYYY, YYYY-MM or YYYY-MM-DD).
std::optional<FieldDiagnosis> detect_year(std::string_view value, const YearRange& range,
                                          DateOrder order = DateOrder::MonthFirst);

struct RecordDiagnosis {
  std::vector<FieldDiagnosis> diagnoses;  // field order, then span offset
  std::vector<std::string> skipped;       // provider failures, one line each
};

// Missing short-circuits every other detector for that field.
RecordDiagnosis diagnose_record(const EtdRecord& rec, const Resources& r);

std::vector<FieldDiagnosis> diagnose_field(const EtdRecord& rec, FieldKey field, const Resources& r,
                                           std::vector<std::string>* skipped = nullptr);

}  // namespace etdq
