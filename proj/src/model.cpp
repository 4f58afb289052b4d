#include "etdq/model.hpp"

#include "etdq/text.hpp"

#include <algorithm>

namespace etdq {

std::string_view dc_field_name(FieldKey key) {
  switch (key) {
    case FieldKey::Title: return "dc.title";
    case FieldKey::Author: return "dc.creator";
    case FieldKey::Advisor: return "dc.contributor";
    case FieldKey::University: return "thesis.degree.generator";
    case FieldKey::Year: return "dc.date.issued";
    case FieldKey::Degree: return "thesis.degree.name";
    case FieldKey::Department: return "thesis.degree.discipline";
  }
  return {};
}

std::string_view field_column(FieldKey key) {
  switch (key) {
    case FieldKey::Title: return "title";
    case FieldKey::Author: return "author";
    case FieldKey::Advisor: return "advisor";
    case FieldKey::University: return "university";
    case FieldKey::Year: return "year";
    case FieldKey::Degree: return "degree";
    case FieldKey::Department: return "department";
  }
  return {};
}

std::optional<FieldKey> field_from_column(std::string_view column) {
  for (FieldKey k : kAllFields) {
    if (text::iequals(field_column(k), column)) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Original: return "Original";
    case Provenance::Extracted: return "Extracted";
    case Provenance::Corrected: return "Corrected";
    case Provenance::Canonicalized: return "Canonicalized";
  }
  return {};
}

std::optional<Provenance> provenance_from_string(std::string_view s) {
  for (auto p : {Provenance::Original, Provenance::Extracted, Provenance::Corrected,
                 Provenance::Canonicalized}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

MissingPolicy::MissingPolicy() : MissingPolicy(kDefaultMissingSentinels) {}

MissingPolicy::MissingPolicy(std::vector<std::string> sentinels) {
  for (auto& s : sentinels) sentinels_.push_back(text::to_lower(text::trim(s)));
}

bool MissingPolicy::is_missing(const std::optional<std::string>& raw) const {
  if (!raw) return true;
  const auto trimmed = text::trim(*raw);
  if (trimmed.empty()) return true;
  const auto lowered = text::to_lower(trimmed);
  return std::find(sentinels_.begin(), sentinels_.end(), lowered) != sentinels_.end();
}

bool is_missing(const FieldValue& v) {
  static const MissingPolicy policy;
  return policy.is_missing(v);
}

}  // namespace etdq
