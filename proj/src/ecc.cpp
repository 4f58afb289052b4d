#include "etdq/ecc.hpp"

#include "etdq/departments.hpp"
#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace etdq {

namespace {

constexpr std::array<std::string_view, 7> kActionNames = {"FillMissing",  "Overwrite", "SpellFix", "Canonicalize",
                                                          "ParseSplit",   "DateSplit", "Rollback"};
constexpr std::array<std::string_view, 7> kSourceNames = {"ExtractionOracle", "Dictionary", "SpellChecker",
                                                          "SimilarityMatch",  "DateParser", "RoleParser",
                                                          "VersionControl"};

template <typename E, std::size_t N>
std::optional<E> from_names(const std::array<std::string_view, N>& names, std::string_view s) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == s) return static_cast<E>(i);
  }
  return std::nullopt;
}

bool has_kind(const std::vector<FieldDiagnosis>& diags, ErrorKind k) {
  return std::any_of(diags.begin(), diags.end(), [k](const FieldDiagnosis& d) { return d.kind == k; });
}

std::vector<FieldDiagnosis> for_field(const std::vector<FieldDiagnosis>& diags, FieldKey f) {
  std::vector<FieldDiagnosis> out;
  std::copy_if(diags.begin(), diags.end(), std::back_inserter(out),
               [f](const FieldDiagnosis& d) { return d.field == f; });
  return out;
}

void apply(EtdRecord& rec, const CorrectionAction& a) {
  auto& fv = rec.field(a.field);
  fv.raw = a.new_value;
  fv.provenance = provenance_after(a.kind);
  if (a.kind == ActionKind::ParseSplit) fv.role = a.role;
  if (a.kind == ActionKind::DateSplit) fv.parts = a.parts;
}

void unresolved(EccLog& log, const std::string& id, FieldKey f, const std::string& why) {
  if (std::find(log.unresolved.begin(), log.unresolved.end(), f) == log.unresolved.end()) {
    log.unresolved.push_back(f);
  }
  log.notes.push_back(id + " " + std::string(field_column(f)) + ": " + why);
}

bool overwritable(FieldKey f, const std::vector<FieldDiagnosis>& diags) {
  if (f != FieldKey::Department && has_kind(diags, ErrorKind::IncorrectValue)) return true;
  return f == FieldKey::Year && has_kind(diags, ErrorKind::Unparseable);
}

// Keeps the capitalization pattern of the misspelled token.
std::string match_case(std::string_view original, const std::string& fixed) {
  const auto cps = text::to_u32(original);
  if (cps.empty()) return fixed;
  if (cps.size() > 1 && std::all_of(cps.begin(), cps.end(), [](char32_t c) {
        return !text::is_alnum(c) || text::is_upper(c) || text::is_digit(c);
      })) {
    return text::to_upper(fixed);
  }
  if (text::is_upper(cps.front())) {
    auto f = text::to_u32(fixed);
    const auto head = text::to_upper(text::to_utf8(f.substr(0, 1)));
    return head + text::to_utf8(f.substr(1));
  }
  return fixed;
}

}  // namespace

std::string_view to_string(ActionKind k) { return kActionNames[static_cast<std::size_t>(k)]; }
std::string_view to_string(ActionSource s) { return kSourceNames[static_cast<std::size_t>(s)]; }
std::optional<ActionKind> action_kind_from_string(std::string_view s) {
  return from_names<ActionKind>(kActionNames, s);
}
std::optional<ActionSource> action_source_from_string(std::string_view s) {
  return from_names<ActionSource>(kSourceNames, s);
}

Provenance provenance_after(ActionKind k) {
  switch (k) {
    case ActionKind::FillMissing:
    case ActionKind::Overwrite:
      return Provenance::Extracted;
    case ActionKind::SpellFix:
      return Provenance::Corrected;
    case ActionKind::Canonicalize:
    case ActionKind::ParseSplit:
    case ActionKind::DateSplit:
      return Provenance::Canonicalized;
    case ActionKind::Rollback:
      break;
  }
  return Provenance::Original;
}

void MapOracle::set(const std::string& id, FieldKey f, std::string value) {
  values_[id][index_of(f)] = std::move(value);
}

ExtractedFields MapOracle::extract(const std::string& record_id) const {
  const auto it = values_.find(record_id);
  return it == values_.end() ? ExtractedFields{} : it->second;
}

namespace {

ExtractedFields fields_from_json(const nlohmann::json& obj, const MissingPolicy& missing, const std::string& where) {
  if (!obj.is_object()) throw ProviderError(where + ": expected a JSON object of fields");
  ExtractedFields out;
  for (const auto& [key, value] : obj.items()) {
    const auto f = field_from_column(key);
    if (!f) throw ProviderError(where + ": unknown field '" + key + "'");
    if (value.is_null()) continue;
    if (!value.is_string()) throw ProviderError(where + ": field '" + key + "' is not a string");
    auto s = value.get<std::string>();
    if (!missing.is_missing(s)) out[index_of(*f)] = std::move(s);
  }
  return out;
}

}  // namespace

SidecarOracle::SidecarOracle(std::filesystem::path path, MissingPolicy missing)
    : path_(std::move(path)), missing_(std::move(missing)) {
  if (std::filesystem::is_directory(path_)) {
    directory_ = true;
    return;
  }
  std::ifstream in(path_);
  if (!in) throw ProviderError("cannot open oracle file " + path_.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto where = path_.string() + ":" + std::to_string(line_no);
    try {
      const auto doc = nlohmann::json::parse(line);
      const auto id = doc.at("id").get<std::string>();
      loaded_[id] = fields_from_json(doc.at("fields"), missing_, where);
    } catch (const nlohmann::json::exception& e) {
      throw ProviderError(where + ": " + e.what());
    }
  }
}

ExtractedFields SidecarOracle::extract(const std::string& record_id) const {
  if (!directory_) {
    const auto it = loaded_.find(record_id);
    return it == loaded_.end() ? ExtractedFields{} : it->second;
  }
  const auto file = path_ / (record_id + ".extracted.json");
  std::ifstream in(file);
  if (!in) return {};
  try {
    const auto doc = nlohmann::json::parse(in);
    return fields_from_json(doc.contains("fields") ? doc.at("fields") : doc, missing_, file.string());
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(file.string() + ": " + e.what());
  }
}

std::vector<CorrectionAction> fill_missing(EtdRecord& rec, const std::vector<FieldDiagnosis>& diags,
                                           const ExtractedFields& oracle, EccLog& log) {
  std::vector<CorrectionAction> out;
  for (const auto& d : diags) {
    if (d.kind != ErrorKind::Missing) continue;
    const auto& v = oracle[index_of(d.field)];
    if (!v) {
      unresolved(log, rec.id(), d.field, "missing and no extracted value");
      continue;
    }
    CorrectionAction a{d.field, ActionKind::FillMissing, std::nullopt, *v, ActionSource::ExtractionOracle, {}, {}};
    apply(rec, a);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<CorrectionAction> overwrite_incorrect(EtdRecord& rec, const std::vector<FieldDiagnosis>& diags,
                                                  const ExtractedFields& oracle, EccLog& log) {
  std::vector<CorrectionAction> out;
  for (const auto f : kAllFields) {
    if (!overwritable(f, for_field(diags, f))) continue;
    const auto& v = oracle[index_of(f)];
    const auto& current = rec.raw(f);
    if (!v) {
      unresolved(log, rec.id(), f, "incorrect and no extracted value");
      continue;
    }
    if (current && *v == *current) {
      unresolved(log, rec.id(), f, "incorrect and the extracted value is the same");
      continue;
    }
    CorrectionAction a{f, ActionKind::Overwrite, current, *v, ActionSource::ExtractionOracle, {}, {}};
    apply(rec, a);
    out.push_back(std::move(a));
  }
  return out;
}

std::optional<CorrectionAction> canonicalize_by_dictionary(FieldKey field, std::string_view value,
                                                           const AliasDictionary& d) {
  const auto m = d.lookup(value);
  if (m.kind != MatchKind::Alias || m.canonical == value) return std::nullopt;
  return CorrectionAction{field, ActionKind::Canonicalize, std::string(value), m.canonical, ActionSource::Dictionary,
                          {}, {}};
}

std::optional<std::string> correct_spelling(std::string_view token, const SpellChecker& words, kernels::Exec exec) {
  return words.correct(token, exec);
}

DepartmentResult canonicalize_department(std::string_view value, const Resources& r) {
  DepartmentResult out;
  std::string working(text::trim(value));

  // spell-fix tokens of the part before any parenthesized suffix
  const auto head = strip_parenthesized_suffix(working);
  std::string fixed;
  std::size_t pos = 0;
  for (const auto& tok : text::split_whitespace(head)) {
    fixed.append(head, pos, tok.begin - pos);
    pos = tok.end;
    const auto word = text::to_lower(text::strip_punct(tok.text));
    std::optional<std::string> repl;
    if (text::length(word) >= 3 && !r.department_speller->known(word) &&
        !is_department_boilerplate(text::normalize_surface(word))) {
      repl = correct_spelling(word, *r.department_speller, r.exec);
    }
    if (!repl) {
      fixed += tok.text;
      continue;
    }
    const auto new_token = match_case(tok.text, *repl);
    out.actions.push_back({FieldKey::Department, ActionKind::SpellFix, tok.text, new_token, ActionSource::SpellChecker,
                           {}, {}});
    fixed += new_token;
  }
  fixed.append(head, pos, std::string::npos);
  if (!out.actions.empty()) working = fixed + working.substr(head.size());
  out.corrected = working;

  auto canonicalize_to = [&](const std::string& canonical, ActionSource source) {
    out.canonical = canonical;
    if (working != canonical) {
      out.actions.push_back({FieldKey::Department, ActionKind::Canonicalize, working, canonical, source, {}, {}});
    }
  };

  const auto key = department_key(working);
  if (key.empty()) {
    out.notes.push_back("nothing left after removing boilerplate");
    return out;
  }
  if (const auto m = r.departments.lookup_key(key); m.kind != MatchKind::NotFound) {
    canonicalize_to(m.canonical, ActionSource::Dictionary);
    return out;
  }

  if (!r.similarity) {
    out.notes.push_back("no similarity provider");
    return out;
  }
  try {
    const auto hit = r.department_index.best(*r.similarity, key, r.exec);
    if (!hit) {
      out.notes.push_back("empty department list");
      return out;
    }
    out.similarity = hit->score;
    if (hit->score >= r.similarity_threshold) {
      canonicalize_to(hit->label, ActionSource::SimilarityMatch);
    } else {
      char buf[160];
      std::snprintf(buf, sizeof buf, "best match '%s' at %.3f below threshold %.2f", hit->label.c_str(),
                    hit->score, r.similarity_threshold);
      out.notes.push_back(buf);
    }
  } catch (const ProviderError& e) {
    out.notes.push_back(std::string("similarity skipped: ") + e.what());
  }
  return out;
}

EccResult apply_ecc(const EtdRecord& rec, const std::vector<FieldDiagnosis>& diags, const Resources& r,
                    const ExtractionOracle& oracle) {
  EccResult res{rec, {}, {}};
  EtdRecord& out = res.record;

  std::optional<ExtractedFields> extracted;
  auto oracle_values = [&]() -> const ExtractedFields& {
    if (!extracted) {
      try {
        extracted = oracle.extract(rec.id());
      } catch (const ProviderError& e) {
        res.log.notes.push_back(rec.id() + ": oracle failed: " + e.what());
        extracted = ExtractedFields{};
      }
    }
    return *extracted;
  };

  for (const auto f : kAllFields) {
    auto fd = for_field(diags, f);
    if (fd.empty()) continue;

    // oracle step
    if (has_kind(fd, ErrorKind::Missing) || overwritable(f, fd)) {
      const auto acts = has_kind(fd, ErrorKind::Missing) ? fill_missing(out, fd, oracle_values(), res.log)
                                                         : overwrite_incorrect(out, fd, oracle_values(), res.log);
      if (acts.empty()) continue;
      res.actions.insert(res.actions.end(), acts.begin(), acts.end());
      fd = diagnose_field(out, f, r, &res.log.notes);
      if (fd.empty()) continue;
      if (has_kind(fd, ErrorKind::Missing) || overwritable(f, fd)) {
        unresolved(res.log, rec.id(), f, "extracted value is itself invalid");
        continue;
      }
    }

    const auto value = out.raw(f).value_or("");
    switch (f) {
      case FieldKey::University:
      case FieldKey::Degree: {
        const auto& dict = f == FieldKey::University ? r.universities : r.degrees;
        if (auto a = canonicalize_by_dictionary(f, value, dict)) {
          apply(out, *a);
          res.actions.push_back(std::move(*a));
        }
        break;
      }
      case FieldKey::Department: {
        auto dep = canonicalize_department(value, r);
        for (auto& a : dep.actions) {
          if (a.kind == ActionKind::SpellFix) {
            // token-level action; the field value is rewritten once below
            out.field(f).provenance = Provenance::Corrected;
          } else {
            apply(out, a);
          }
        }
        // spelling fixed but no entity found: keep the corrected text
        if (!dep.canonical && !dep.actions.empty()) out.field(f).raw = dep.corrected;
        if (!dep.canonical) {
          unresolved(res.log, rec.id(), f, dep.notes.empty() ? "no department match" : dep.notes.front());
        }
        res.actions.insert(res.actions.end(), dep.actions.begin(), dep.actions.end());
        break;
      }
      case FieldKey::Year: {
        if (!has_kind(fd, ErrorKind::NonCanonical)) break;
        const auto parsed = parse_date(value, r.date_order);
        if (!parsed) break;
        CorrectionAction a{f, ActionKind::DateSplit, value, render_iso(parsed->parts), ActionSource::DateParser,
                           {}, parsed->parts};
        apply(out, a);
        res.actions.push_back(std::move(a));
        break;
      }
      case FieldKey::Advisor: {
        if (!has_kind(fd, ErrorKind::NonCanonical)) break;
        const auto c = parse_contributor(value);
        if (!c.role) break;
        CorrectionAction a{f, ActionKind::ParseSplit, value, c.name, ActionSource::RoleParser, c.role, {}};
        apply(out, a);
        res.actions.push_back(std::move(a));
        break;
      }
      case FieldKey::Title:
      case FieldKey::Author:
        break;
    }
  }
  return res;
}

}  // namespace etdq
