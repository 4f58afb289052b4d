#include "etdq/serialize.hpp"

#include "etdq/errors.hpp"

namespace etdq::json {

namespace {

ordered optional_text(const std::optional<std::string>& s) { return s ? ordered(*s) : ordered(nullptr); }

std::optional<std::string> text_or_null(const ordered& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<std::string>();
}

FieldKey field_or_throw(const std::string& s) {
  const auto f = field_from_column(s);
  if (!f) throw ParseError("unknown field '" + s + "'");
  return *f;
}

}  // namespace

ordered parts_to_json(const DateParts& p) {
  ordered j;
  j["year"] = p.year;
  if (p.month) j["month"] = *p.month;
  if (p.day) j["day"] = *p.day;
  return j;
}

DateParts parts_from_json(const ordered& j) {
  DateParts p;
  p.year = j.at("year").get<int>();
  if (j.contains("month")) p.month = j.at("month").get<int>();
  if (j.contains("day")) p.day = j.at("day").get<int>();
  return p;
}

ordered snapshot_to_json(const EtdRecord& rec) {
  ordered j = ordered::object();
  for (const auto f : kAllFields) {
    const auto& fv = rec.field(f);
    ordered v;
    v["raw"] = optional_text(fv.raw);
    v["provenance"] = std::string(to_string(fv.provenance));
    if (fv.role) v["role"] = *fv.role;
    if (fv.parts) v["parts"] = parts_to_json(*fv.parts);
    j[std::string(field_column(f))] = std::move(v);
  }
  return j;
}

EtdRecord snapshot_from_json(const std::string& id, const ordered& j) {
  EtdRecord rec(id);
  for (const auto f : kAllFields) {
    const auto& v = j.at(std::string(field_column(f)));
    auto& fv = rec.field(f);
    fv.raw = text_or_null(v, "raw");
    const auto prov = provenance_from_string(v.at("provenance").get<std::string>());
    if (!prov) throw ParseError("unknown provenance in snapshot of " + id);
    fv.provenance = *prov;
    if (v.contains("role")) fv.role = v.at("role").get<std::string>();
    if (v.contains("parts")) fv.parts = parts_from_json(v.at("parts"));
  }
  return rec;
}

ordered action_to_json(const CorrectionAction& a) {
  ordered j;
  j["field"] = std::string(field_column(a.field));
  j["kind"] = std::string(to_string(a.kind));
  j["old"] = optional_text(a.old_value);
  j["new"] = optional_text(a.new_value);
  j["source"] = std::string(to_string(a.source));
  if (a.role) j["role"] = *a.role;
  if (a.parts) j["parts"] = parts_to_json(*a.parts);
  return j;
}

CorrectionAction action_from_json(const ordered& j) {
  CorrectionAction a;
  a.field = field_or_throw(j.at("field").get<std::string>());
  const auto kind = action_kind_from_string(j.at("kind").get<std::string>());
  const auto source = action_source_from_string(j.at("source").get<std::string>());
  if (!kind || !source) throw ParseError("unknown action kind or source");
  a.kind = *kind;
  a.source = *source;
  a.old_value = text_or_null(j, "old");
  a.new_value = text_or_null(j, "new");
  if (j.contains("role")) a.role = j.at("role").get<std::string>();
  if (j.contains("parts")) a.parts = parts_from_json(j.at("parts"));
  return a;
}

ordered diagnosis_to_json(const std::string& record_id, const FieldDiagnosis& d) {
  ordered j;
  j["record_id"] = record_id;
  j["field"] = std::string(field_column(d.field));
  j["kind"] = std::string(to_string(d.kind));
  j["detail"] = d.detail;
  j["detector"] = d.detector;
  if (!d.spans.empty()) {
    auto spans = ordered::array();
    for (const auto& s : d.spans) spans.push_back({s.begin, s.end});
    j["spans"] = std::move(spans);
  }
  return j;
}

}  // namespace etdq::json
