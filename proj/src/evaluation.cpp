#include "etdq/evaluation.hpp"

#include "etdq/departments.hpp"
#include "etdq/errors.hpp"
#include "etdq/records_io.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace etdq {

// ---- gold labels ----

std::vector<GoldLabel> parse_gold(std::string_view csv) {
  const auto rows = io::parse_csv(csv);
  if (rows.empty()) throw ParseError("gold file is empty");
  const std::vector<std::string> expected = {"record_id", "field", "true_value", "error_kind"};
  if (rows.front().cells != expected) throw ParseError("gold header must be record_id,field,true_value,error_kind");

  std::vector<GoldLabel> out;
  std::set<std::pair<std::string, FieldKey>> seen;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.cells.size() == 1 && r.cells[0].empty()) continue;
    const auto where = "gold line " + std::to_string(r.line);
    if (r.cells.size() != 4) throw ParseError(where + ": expected 4 cells");
    const auto field = field_from_column(r.cells[1]);
    if (!field) throw ParseError(where + ": unknown field '" + r.cells[1] + "'");
    GoldLabel g{r.cells[0], *field, r.cells[2], std::nullopt};
    if (!r.cells[3].empty()) {
      g.error_kind = error_kind_from_string(r.cells[3]);
      if (!g.error_kind) throw ParseError(where + ": unknown error kind '" + r.cells[3] + "'");
    }
    if (!seen.insert({g.record_id, g.field}).second) {
      throw ParseError(where + ": second label for " + g.record_id + "/" + r.cells[1]);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GoldLabel> read_gold(const std::filesystem::path& path) { return parse_gold(io::read_file(path)); }

std::string format_gold(const std::vector<GoldLabel>& labels) {
  std::string out = "record_id,field,true_value,error_kind\n";
  for (const auto& g : labels) {
    out += io::csv_line({g.record_id, std::string(field_column(g.field)), g.true_value,
                         g.error_kind ? std::string(to_string(*g.error_kind)) : std::string()});
  }
  return out;
}

// ---- scoring ----

double f1_from(double p, double r) { return p + r > 0 ? 2 * p * r / (p + r) : 0.0; }

Prf prf(const Counts& c) {
  Prf m;
  m.precision = c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0;
  m.recall = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0;
  m.f1 = f1_from(m.precision, m.recall);
  return m;
}

namespace {

using Key = std::pair<std::string, FieldKey>;

std::map<Key, const GoldLabel*> index_labels(const std::vector<GoldLabel>& labels) {
  std::map<Key, const GoldLabel*> out;
  for (const auto& g : labels) out[{g.record_id, g.field}] = &g;
  return out;
}

bool positive(const GoldLabel* g) { return g && g->error_kind; }

}  // namespace

FieldCounts score_detection(const std::vector<DiagnosedField>& diagnosed, const std::vector<GoldLabel>& labels) {
  const auto idx = index_labels(labels);
  std::set<Key> flagged;
  for (const auto& d : diagnosed) flagged.insert({d.record_id, d.field});

  FieldCounts out{};
  for (const auto& k : flagged) {
    const auto it = idx.find(k);
    auto& c = out[index_of(k.second)];
    if (it != idx.end() && positive(it->second)) ++c.tp;
    else ++c.fp;
  }
  for (const auto& [k, g] : idx) {
    if (positive(g) && !flagged.contains(k)) ++out[index_of(k.second)].fn;
  }
  return out;
}

bool values_match(FieldKey field, const std::optional<std::string>& value, const std::string& gold, DateOrder order) {
  if (!value) return false;
  if (field == FieldKey::Year) {
    const auto a = parse_date(*value, order);
    const auto b = parse_date(gold, order);
    if (a && b) return a->parts == b->parts;
  }
  return text::normalize_surface(*value) == text::normalize_surface(gold);
}

FieldCounts score_ecc(const std::vector<RecordOutcome>& outcomes, const std::vector<GoldLabel>& labels,
                      DateOrder order) {
  const auto idx = index_labels(labels);
  std::set<Key> acted;
  std::map<std::string, const EtdRecord*> finals;
  for (const auto& o : outcomes) {
    finals[o.record.id()] = &o.record;
    for (const auto& a : o.actions) acted.insert({o.record.id(), a.field});
  }

  auto corrected = [&](const Key& k, const GoldLabel& g) {
    const auto it = finals.find(k.first);
    return it != finals.end() && acted.contains(k) && values_match(k.second, it->second->raw(k.second), g.true_value, order);
  };

  FieldCounts out{};
  for (const auto& [k, g] : idx) {
    if (!positive(g)) continue;
    auto& c = out[index_of(k.second)];
    if (corrected(k, *g)) ++c.tp;
    else ++c.fn;
  }
  for (const auto& k : acted) {
    const auto it = idx.find(k);
    if (it == idx.end() || !corrected(k, *it->second)) ++out[index_of(k.second)].fp;
  }
  return out;
}

// ---- reports ----

namespace {

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

nlohmann::ordered_json stage_json(const Counts& c) {
  const auto m = prf(c);
  nlohmann::ordered_json j;
  j["precision"] = round3(m.precision);
  j["recall"] = round3(m.recall);
  j["f1"] = round3(m.f1);
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  return j;
}

}  // namespace

std::string format_report_text(const EvalReport& report) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %6s %6s %6s %6s %6s %6s\n", "Field", "P_ED", "R_ED", "F1_ED", "P_ECC",
                "R_ECC", "F1_ECC");
  out += buf;
  for (const auto f : kAllFields) {
    const auto ed = prf(report.ed[index_of(f)]);
    const auto ecc = prf(report.ecc[index_of(f)]);
    std::snprintf(buf, sizeof buf, "%-12s %6.3f %6.3f %6.3f %6.3f %6.3f %6.3f\n", std::string(field_column(f)).c_str(),
                  ed.precision, ed.recall, ed.f1, ecc.precision, ecc.recall, ecc.f1);
    out += buf;
  }
  return out;
}

std::string format_report_json(const EvalReport& report) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto f : kAllFields) {
    nlohmann::ordered_json row;
    row["field"] = std::string(field_column(f));
    row["ed"] = stage_json(report.ed[index_of(f)]);
    row["ecc"] = stage_json(report.ecc[index_of(f)]);
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json j;
  j["fields"] = std::move(rows);
  return j.dump(2) + "\n";
}

EvalReport combine_reports(const std::vector<EvalReport>& reports) {
  if (reports.empty()) throw std::invalid_argument("no reports to combine");
  EvalReport out;
  for (const auto& r : reports) {
    for (std::size_t i = 0; i < kFieldCount; ++i) {
      for (auto [dst, src] : {std::pair{&out.ed[i], &r.ed[i]}, std::pair{&out.ecc[i], &r.ecc[i]}}) {
        dst->tp += src->tp;
        dst->fp += src->fp;
        dst->fn += src->fn;
      }
    }
  }
  return out;
}

// ---- noise injection ----

void NoiseConfig::validate() const {
  for (const auto f : kAllFields) {
    const auto& n = fields[index_of(f)];
    for (double p : {n.drop, n.typo, n.acronymize, n.wrong_value}) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("noise probability for " + std::string(field_column(f)) + " outside [0,1]");
      }
    }
    if (n.drop + n.typo + n.acronymize + n.wrong_value > 1.0 + 1e-12) {
      throw std::invalid_argument("noise probabilities for " + std::string(field_column(f)) + " sum above 1");
    }
  }
}

std::optional<std::string> random_typo(std::string_view value, Rng& rng) {
  const auto tokens = text::split_whitespace(value);
  std::vector<const text::Token*> eligible;
  for (const auto& t : tokens) {
    const auto cps = text::to_u32(t.text);
    const auto letters = std::count_if(cps.begin(), cps.end(), [](char32_t c) { return text::is_alnum(c) && !text::is_digit(c); });
    if (letters >= 4) eligible.push_back(&t);
  }
  if (eligible.empty()) return std::nullopt;
  const auto& tok = *eligible[rng.index(eligible.size())];
  auto cps = text::to_u32(tok.text);
  const bool upper = std::all_of(cps.begin(), cps.end(), [](char32_t c) { return !text::is_alnum(c) || text::is_upper(c); });
  auto letter = [&](char32_t avoid) {
    char32_t c;
    do {
      c = static_cast<char32_t>((upper ? U'A' : U'a') + rng.index(26));
    } while (c == avoid);
    return c;
  };

  const auto original = cps;
  switch (rng.index(4)) {
    case 0:
      cps.erase(rng.index(cps.size()), 1);
      break;
    case 1:
      cps.insert(cps.begin() + static_cast<std::ptrdiff_t>(rng.index(cps.size() + 1)), letter(0));
      break;
    case 2: {
      const auto i = rng.index(cps.size());
      cps[i] = letter(cps[i]);
      break;
    }
    default: {
      std::vector<std::size_t> swappable;
      for (std::size_t i = 0; i + 1 < cps.size(); ++i) {
        if (cps[i] != cps[i + 1]) swappable.push_back(i);
      }
      if (swappable.empty()) {
        cps[0] = letter(cps[0]);
      } else {
        const auto i = rng.pick(swappable);
        std::swap(cps[i], cps[i + 1]);
      }
    }
  }
  if (cps == original) return std::nullopt;
  std::string out(value.substr(0, tok.begin));
  out += text::to_utf8(cps);
  out += value.substr(tok.end);
  return out;
}

NoiseResult inject_noise(const std::vector<EtdRecord>& gold, const NoiseConfig& cfg, const NoiseDictionaries& dicts) {
  cfg.validate();
  NoiseResult res;
  res.records = gold;
  Rng rng(cfg.seed);
  const MissingPolicy missing;

  auto dict_for = [&](FieldKey f) -> const AliasDictionary* {
    switch (f) {
      case FieldKey::University: return dicts.universities;
      case FieldKey::Degree: return dicts.degrees;
      case FieldKey::Department: return dicts.departments;
      default: return nullptr;
    }
  };

  for (std::size_t i = 0; i < res.records.size(); ++i) {
    auto& rec = res.records[i];
    for (const auto f : kAllFields) {
      const auto& n = cfg.fields[index_of(f)];
      const double u = rng.uniform();
      const auto original = rec.raw(f);
      if (missing.is_missing(original)) continue;
      auto note = [&](const std::string& what) {
        res.notes.push_back(rec.id() + " " + std::string(field_column(f)) + ": " + what + " not applicable");
      };

      std::optional<std::string> replacement;
      std::optional<ErrorKind> kind;
      if (u < n.drop) {
        kind = ErrorKind::Missing;
      } else if (u < n.drop + n.typo) {
        replacement = random_typo(*original, rng);
        if (replacement) kind = ErrorKind::Misspelling;
        else note("typo");
      } else if (u < n.drop + n.typo + n.acronymize) {
        const auto* d = dict_for(f);
        const auto* entry = d ? d->find_entry(*original) : nullptr;
        if (entry && !entry->aliases.empty()) {
          replacement = rng.pick(entry->aliases);
          kind = ErrorKind::NonCanonical;
        } else {
          note("acronymize");
        }
      } else if (u < n.drop + n.typo + n.acronymize + n.wrong_value) {
        // a different record's different field; a bounded number of tries
        for (int attempt = 0; attempt < 16 && gold.size() > 1 && !replacement; ++attempt) {
          auto j = rng.index(gold.size() - 1);
          if (j >= i) ++j;
          auto g = kAllFields[rng.index(kFieldCount - 1)];
          if (index_of(g) >= index_of(f)) g = kAllFields[index_of(g) + 1];
          const auto& v = gold[j].raw(g);
          if (!missing.is_missing(v) && *v != *original) replacement = *v;
        }
        if (replacement) kind = ErrorKind::IncorrectValue;
        else note("wrong_value");
      }
      if (!kind) continue;
      rec.set_raw(f, replacement);
      res.labels.push_back({rec.id(), f, *original, kind});
    }
  }
  return res;
}

// ---- sampling ----

namespace {

std::size_t parse_size(std::string_view s, std::string_view spec) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw ConfigError("bad number '" + std::string(s) + "' in criterion '" + std::string(spec) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string_view::npos) break;
    start = p + 1;
  }
  return out;
}

}  // namespace

SampleCriterion parse_criterion(std::string_view spec) {
  const auto parts = split(spec, ':');
  const auto& name = parts[0];
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ConfigError("criterion '" + std::string(spec) + "' needs " + std::to_string(n) + " arguments");
    }
  };
  if (name == "random") {
    want(1);
    return sample::Random{parse_size(parts[1], spec)};
  }
  if (name == "university") {
    want(2);
    return sample::ByUniversity{parse_size(parts[1], spec), parse_size(parts[2], spec)};
  }
  if (name == "year") {
    want(2);
    const auto range = split(parts[1], '-');
    if (range.size() != 2) throw ConfigError("year criterion needs FIRST-LAST");
    const auto first = static_cast<int>(parse_size(range[0], spec));
    const auto last = static_cast<int>(parse_size(range[1], spec));
    if (first > last) throw ConfigError("year criterion range is reversed: " + std::string(spec));
    return sample::ByYear{first, last, parse_size(parts[2], spec)};
  }
  if (name == "department") {
    want(3);
    return sample::ByDepartment{parse_size(parts[1], spec), parse_size(parts[2], spec), parse_size(parts[3], spec)};
  }
  if (name == "degree") {
    want(2);
    return sample::ByDegree{parse_size(parts[1], spec), parse_size(parts[2], spec)};
  }
  throw ConfigError("unknown sampling criterion '" + std::string(name) + "'");
}

namespace {

using Strata = std::map<std::string, std::vector<std::size_t>>;

std::string stratum_key(const EtdRecord& rec, FieldKey f, const SampleContext& ctx) {
  static const MissingPolicy missing;
  const auto& raw = rec.raw(f);
  if (missing.is_missing(raw)) return {};
  switch (f) {
    case FieldKey::University:
    case FieldKey::Degree: {
      const auto* d = f == FieldKey::University ? ctx.universities : ctx.degrees;
      if (d) {
        if (const auto m = d->lookup(*raw); m.kind != MatchKind::NotFound) return m.canonical;
      }
      return text::normalize_surface(*raw);
    }
    case FieldKey::Department: {
      const auto key = department_key(*raw);
      if (ctx.departments) {
        if (const auto m = ctx.departments->lookup_key(key); m.kind != MatchKind::NotFound) return m.canonical;
      }
      return key;
    }
    case FieldKey::Year: {
      const auto p = parse_date(*raw, ctx.date_order);
      return p ? std::to_string(p->parts.year) : std::string();
    }
    default:
      return text::normalize_surface(*raw);
  }
}

Strata build_strata(const std::vector<EtdRecord>& records, FieldKey f, const SampleContext& ctx) {
  Strata s;
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto k = stratum_key(records[i], f, ctx);
    if (!k.empty()) s[k].push_back(i);
  }
  return s;
}

void take_from(const std::string& name, std::vector<std::size_t> members, std::size_t k, Rng& rng,
               std::vector<std::size_t>& chosen, std::vector<std::string>& notes) {
  rng.shuffle(members);
  if (members.size() < k) {
    notes.push_back("stratum '" + name + "' has " + std::to_string(members.size()) + " of " + std::to_string(k) +
                    " records");
  }
  members.resize(std::min(k, members.size()));
  chosen.insert(chosen.end(), members.begin(), members.end());
}

void take_strata(const Strata& strata, std::vector<std::string> keys, std::size_t count, std::size_t k, Rng& rng,
                 std::vector<std::size_t>& chosen, std::vector<std::string>& notes, const std::string& what) {
  rng.shuffle(keys);
  if (keys.size() < count) {
    notes.push_back("only " + std::to_string(keys.size()) + " " + what + " strata for " + std::to_string(count));
  }
  keys.resize(std::min(count, keys.size()));
  for (const auto& key : keys) take_from(key, strata.at(key), k, rng, chosen, notes);
}

std::vector<std::string> keys_of(const Strata& s) {
  std::vector<std::string> out;
  for (const auto& [k, _] : s) out.push_back(k);
  return out;
}

}  // namespace

SampleResult stratified_sample(const std::vector<EtdRecord>& records, const SampleCriterion& criterion,
                               std::uint64_t seed, const SampleContext& ctx) {
  if (records.empty()) throw std::invalid_argument("cannot sample an empty corpus");
  Rng rng(seed);
  std::vector<std::size_t> chosen;
  SampleResult res;

  std::visit(
      [&](const auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, sample::Random>) {
          std::vector<std::size_t> all(records.size());
          for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
          take_from("corpus", std::move(all), c.n, rng, chosen, res.notes);
        } else if constexpr (std::is_same_v<C, sample::ByUniversity>) {
          const auto s = build_strata(records, FieldKey::University, ctx);
          take_strata(s, keys_of(s), c.universities, c.per_university, rng, chosen, res.notes, "university");
        } else if constexpr (std::is_same_v<C, sample::ByDegree>) {
          const auto s = build_strata(records, FieldKey::Degree, ctx);
          take_strata(s, keys_of(s), c.degrees, c.per_degree, rng, chosen, res.notes, "degree");
        } else if constexpr (std::is_same_v<C, sample::ByYear>) {
          const auto s = build_strata(records, FieldKey::Year, ctx);
          for (int y = c.first; y <= c.last; ++y) {
            const auto it = s.find(std::to_string(y));
            take_from(std::to_string(y), it == s.end() ? std::vector<std::size_t>{} : it->second, c.per_year, rng,
                      chosen, res.notes);
          }
        } else {
          const auto s = build_strata(records, FieldKey::Department, ctx);
          std::set<std::string> stem_keys;
          for (const auto& name : ctx.stem_departments) stem_keys.insert(department_key(name));
          std::vector<std::string> stem, other;
          for (const auto& k : keys_of(s)) (stem_keys.contains(department_key(k)) ? stem : other).push_back(k);
          take_strata(s, stem, c.stem, c.per_department, rng, chosen, res.notes, "STEM department");
          take_strata(s, other, c.non_stem, c.per_department, rng, chosen, res.notes, "non-STEM department");
        }
      },
      criterion);

  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  for (auto i : chosen) res.records.push_back(records[i]);
  return res;
}

std::vector<EtdRecord> combine_samples(const std::vector<std::vector<EtdRecord>>& samples) {
  std::vector<EtdRecord> out;
  std::set<std::string> seen;
  for (const auto& s : samples) {
    for (const auto& r : s) {
      if (seen.insert(r.id()).second) out.push_back(r);
    }
  }
  return out;
}

}  // namespace etdq
