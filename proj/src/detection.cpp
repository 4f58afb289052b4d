#include "etdq/detection.hpp"

#include "etdq/departments.hpp"
#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace etdq {

namespace {

constexpr std::array<std::string_view, 5> kKindNames = {"Missing", "IncorrectValue", "Misspelling",
                                                        "NonCanonical", "Unparseable"};

FieldDiagnosis make(FieldKey f, ErrorKind k, std::string detail, std::string detector) {
  return {f, k, std::move(detail), std::move(detector), {}};
}

std::string in_quotes(std::string_view s) { return "'" + std::string(s) + "'"; }

}  // namespace

std::string_view to_string(ErrorKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<ErrorKind> error_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<ErrorKind>(i);
  }
  return std::nullopt;
}

void finish_resources(Resources& r) {
  if (!r.department_speller) r.department_speller = std::make_shared<SpellChecker>(WordFrequencyList{});
  if (!r.judge) r.judge = std::make_shared<RuleNameJudge>();
  if (!r.similarity || r.department_index.size() != r.departments.size()) {
    std::vector<std::pair<std::string, std::string>> rows;  // (canonical, key)
    for (const auto& e : r.departments.entries()) rows.emplace_back(e.canonical, department_key(e.canonical));
    std::sort(rows.begin(), rows.end());
    std::vector<std::string> keys, labels;
    for (auto& [c, k] : rows) {
      labels.push_back(c);
      keys.push_back(k);
    }
    if (!r.similarity) r.similarity = std::make_shared<TrigramTfidfProvider>(keys);
    r.department_index = SimilarityIndex(*r.similarity, keys, labels);
  }
}

std::optional<FieldDiagnosis> detect_title(std::string_view value, const Resources& r) {
  const auto verdict = classify_title(extract_title_features(value, r.title_idf), r.title_model);
  if (verdict.label == TitleLabel::Valid) return std::nullopt;
  char buf[64];
  std::snprintf(buf, sizeof buf, "title classifier score %.3f", verdict.score);
  return make(FieldKey::Title, ErrorKind::IncorrectValue, buf, "title_classifier");
}

std::optional<FieldDiagnosis> detect_person_name(FieldKey field, std::string_view value, const NameJudge& judge) {
  const auto judgment = judge.judge(value);
  FieldDiagnosis d = make(field, ErrorKind::IncorrectValue, "", "name_judge");
  for (const auto& t : judgment.tokens) {
    if (t.label == NameLabel::Person) continue;
    if (!d.detail.empty()) d.detail += ", ";
    d.detail += in_quotes(t.text);
    d.spans.push_back({t.offset, t.offset + t.text.size()});
  }
  if (d.spans.empty()) return std::nullopt;
  d.detail = "non-PERSON tokens: " + d.detail;
  return d;
}

std::optional<FieldDiagnosis> detect_advisor(std::string_view value, const NameJudge& judge) {
  const auto c = parse_contributor(value);
  auto bad = detect_person_name(FieldKey::Advisor, c.name, judge);
  if (bad) {
    // spans are relative to the name part, which starts after leading whitespace
    const auto shift = static_cast<std::size_t>(text::trim(value).data() - value.data());
    for (auto& s : bad->spans) {
      s.begin += shift;
      s.end += shift;
    }
    return bad;
  }
  if (c.role) {
    return make(FieldKey::Advisor, ErrorKind::NonCanonical, "role suffix " + in_quotes(*c.role), "role_parser");
  }
  return std::nullopt;
}

std::optional<FieldDiagnosis> detect_dictionary_field(FieldKey field, std::string_view value,
                                                      const AliasDictionary& d) {
  const auto m = d.lookup(value);
  switch (m.kind) {
    case MatchKind::Canonical:
      return std::nullopt;
    case MatchKind::Alias:
      return make(field, ErrorKind::NonCanonical, "alias of " + in_quotes(m.canonical), "dictionary");
    case MatchKind::NotFound:
      break;
  }
  return make(field, ErrorKind::IncorrectValue, in_quotes(value) + " not in dictionary", "dictionary");
}

std::vector<FieldDiagnosis> detect_department_spelling(std::string_view value, const SpellChecker& words,
                                                       kernels::Exec exec) {
  std::vector<FieldDiagnosis> out;
  for (const auto& tok : text::split_whitespace(value)) {
    const auto word = text::to_lower(text::strip_punct(tok.text));
    if (text::length(word) < 3 || words.known(word)) continue;
    if (words.has_candidate_within(word, 2, exec)) {
      out.push_back({FieldKey::Department, ErrorKind::Misspelling, "misspelled " + in_quotes(tok.text), "spelling",
                     {{tok.begin, tok.end}}});
    } else {
      out.push_back({FieldKey::Department, ErrorKind::IncorrectValue, "unknown word " + in_quotes(tok.text),
                     "spelling", {{tok.begin, tok.end}}});
    }
  }
  return out;
}

std::vector<FieldDiagnosis> detect_department(std::string_view value, const Resources& r) {
  const auto key = department_key(value);
  if (!key.empty()) {
    const auto m = r.departments.lookup_key(key);
    if (m.kind != MatchKind::NotFound) {
      if (text::trim(value) == m.canonical) return {};
      return {make(FieldKey::Department, ErrorKind::NonCanonical, "variant of " + in_quotes(m.canonical),
                   "department_dictionary")};
    }
  }
  // spell-check the value without its parenthesized suffix; offsets stay
  // valid because the stripped text is a prefix of the trimmed value
  const auto trimmed = text::trim(value);
  const auto shift = static_cast<std::size_t>(trimmed.data() - value.data());
  auto spelled = detect_department_spelling(strip_parenthesized_suffix(value), *r.department_speller, r.exec);
  for (auto& d : spelled) {
    for (auto& s : d.spans) {
      s.begin += shift;
      s.end += shift;
    }
  }
  if (!spelled.empty()) return spelled;
  return {make(FieldKey::Department, ErrorKind::NonCanonical, in_quotes(value) + " not in dictionary",
               "department_dictionary")};
}

std::optional<FieldDiagnosis> detect_year(std::string_view value, const YearRange& range, DateOrder order) {
  const auto parsed = parse_date(value, order);
  if (!parsed) return make(FieldKey::Year, ErrorKind::Unparseable, "unparseable " + in_quotes(value), "date_parser");
  if (!range.contains(parsed->parts.year)) {
    return make(FieldKey::Year, ErrorKind::IncorrectValue,
                "year " + std::to_string(parsed->parts.year) + " outside " + std::to_string(range.min_year) + "-" +
                    std::to_string(range.max_year),
                "year_range");
  }
  if (!is_iso_format(parsed->format) || render_iso(parsed->parts) != text::trim(value)) {
    return make(FieldKey::Year, ErrorKind::NonCanonical, "not ISO formatted", "date_parser");
  }
  return std::nullopt;
}

std::vector<FieldDiagnosis> diagnose_field(const EtdRecord& rec, FieldKey field, const Resources& r,
                                           std::vector<std::string>* skipped) {
  const auto& fv = rec.field(field);
  if (r.missing.is_missing(fv)) return {make(field, ErrorKind::Missing, "missing value", "missing")};
  const std::string_view value = *fv.raw;

  auto one = [](std::optional<FieldDiagnosis> d) {
    std::vector<FieldDiagnosis> v;
    if (d) v.push_back(std::move(*d));
    return v;
  };

  try {
    switch (field) {
      case FieldKey::Title:
        return one(detect_title(value, r));
      case FieldKey::Author:
        return one(detect_person_name(field, value, *r.judge));
      case FieldKey::Advisor:
        return one(detect_advisor(value, *r.judge));
      case FieldKey::University:
        return one(detect_dictionary_field(field, value, r.universities));
      case FieldKey::Degree:
        return one(detect_dictionary_field(field, value, r.degrees));
      case FieldKey::Year:
        return one(detect_year(value, r.years, r.date_order));
      case FieldKey::Department:
        return detect_department(value, r);
    }
  } catch (const ProviderError& e) {
    if (skipped) skipped->push_back(rec.id() + " " + std::string(field_column(field)) + ": " + e.what());
  }
  return {};
}

RecordDiagnosis diagnose_record(const EtdRecord& rec, const Resources& r) {
  RecordDiagnosis out;
  for (const auto f : kAllFields) {
    auto diags = diagnose_field(rec, f, r, &out.skipped);
    std::stable_sort(diags.begin(), diags.end(), [](const FieldDiagnosis& a, const FieldDiagnosis& b) {
      const auto ka = a.spans.empty() ? 0 : a.spans.front().begin;
      const auto kb = b.spans.empty() ? 0 : b.spans.front().begin;
      return ka < kb;
    });
    for (auto& d : diags) out.diagnoses.push_back(std::move(d));
  }
  return out;
}

}  // namespace etdq
