// etdq: detect, fix and track quality problems in ETD metadata files.
#include "etdq/config.hpp"
#include "etdq/errors.hpp"
#include "etdq/evaluation.hpp"
#include "etdq/pipeline.hpp"
#include "etdq/records_io.hpp"
#include "etdq/serialize.hpp"
#include "etdq/store.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <thread>

#ifndef ETDQ_DATA_DIR
#define ETDQ_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace etdq;

namespace {

enum Exit { kOk = 0, kPartial = 1, kConfig = 2 };

struct Common {
  std::string config;
  std::string input;
  std::string output;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<int> jobs;
  std::string journal;
  std::string oracle;
};

fs::path data_dir() {
  if (const char* env = std::getenv("ETDQ_DATA")) return env;
  return ETDQ_DATA_DIR;
}

// flags > config file > shipped defaults
PipelineConfig make_config(const Common& c) {
  auto cfg = PipelineConfig::defaults(data_dir());
  if (!c.config.empty()) cfg = PipelineConfig::load(c.config, cfg);
  if (c.threshold) cfg.similarity_threshold = *c.threshold;
  if (!c.journal.empty()) cfg.journal = c.journal;
  if (!c.oracle.empty()) cfg.oracle = c.oracle;
  return cfg;
}

PipelineOptions pipeline_options(const Common& c) {
  const int jobs = c.jobs ? *c.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (jobs < 1) throw ConfigError("--jobs must be at least 1");
  PipelineOptions opt;
  opt.exec = jobs > 1 ? kernels::Exec::Parallel : kernels::Exec::Serial;
  opt.jobs = jobs;
  return opt;
}

Resources resources_for(const PipelineConfig& cfg, const PipelineOptions& opt) {
  auto r = load_resources(cfg);
  // threads go to records, so the per-value kernels stay serial
  (void)opt;
  r.exec = kernels::Exec::Serial;
  return r;
}

io::Format input_format(const Common& c) {
  if (!c.format.empty()) return io::parse_format(c.format);
  return io::guess_format(c.input);
}

io::Format output_format(const Common& c, const fs::path& out) {
  if (!c.format.empty()) return io::parse_format(c.format);
  return io::guess_format(out);
}

std::string need(const std::string& value, const char* flag) {
  if (value.empty()) throw ConfigError(std::string(flag) + " is required");
  return value;
}

// Reads the input corpus and reports skipped rows on stderr.
io::IngestResult ingest_input(const Common& c) {
  auto res = io::read_records(need(c.input, "--input"), input_format(c));
  for (const auto& issue : res.issues) {
    std::fprintf(stderr, "%s:%zu: %s\n", c.input.c_str(), issue.line, issue.message.c_str());
  }
  return res;
}

void print_skipped(const std::vector<std::string>& lines) {
  for (const auto& s : lines) std::fprintf(stderr, "skipped: %s\n", s.c_str());
}

std::unique_ptr<VersionStore> open_store(const PipelineConfig& cfg, bool read_only) {
  if (!cfg.journal) throw ConfigError("no journal configured (use --journal or the config file)");
  VersionStore::Options o;
  o.read_only = read_only;
  o.durable = cfg.journal_fsync;
  auto store = std::make_unique<VersionStore>(*cfg.journal, o);
  if (store->truncation()) std::fprintf(stderr, "journal: %s\n", store->truncation()->c_str());
  return store;
}

std::unique_ptr<ExtractionOracle> make_oracle(const PipelineConfig& cfg, const Resources& r) {
  if (!cfg.oracle) return std::make_unique<EmptyOracle>();
  return std::make_unique<SidecarOracle>(*cfg.oracle, r.missing);
}

std::string jsonl(const std::vector<json::ordered>& rows) {
  std::string out;
  for (const auto& j : rows) {
    out += j.dump();
    out.push_back('\n');
  }
  return out;
}

std::string kind_table(const std::map<std::pair<FieldKey, std::string>, std::size_t>& counts,
                       const std::vector<std::string>& kinds) {
  std::string out = "field";
  for (const auto& k : kinds) out += "\t" + k;
  out += "\n";
  for (const auto f : kAllFields) {
    out += std::string(field_column(f));
    for (const auto& k : kinds) {
      const auto it = counts.find({f, k});
      out += "\t" + std::to_string(it == counts.end() ? 0 : it->second);
    }
    out += "\n";
  }
  return out;
}

// ---- commands ----

int cmd_ingest(const Common& c) {
  const auto cfg = make_config(c);
  cfg.validate();
  const auto res = ingest_input(c);
  auto store = open_store(cfg, false);
  std::size_t created = 0;
  for (const auto& rec : res.records) {
    if (store->contains(rec.id())) continue;
    store->commit(rec, {});
    ++created;
  }
  std::printf("records\t%zu\nnew_versions\t%zu\nskipped_rows\t%zu\n", res.records.size(), created,
              res.issues.size());
  return res.issues.empty() ? kOk : kPartial;
}

int cmd_detect(const Common& c) {
  const auto cfg = make_config(c);
  const auto opt = pipeline_options(c);
  const auto r = resources_for(cfg, opt);
  const auto res = ingest_input(c);
  const auto diags = run_detection(res.records, r, opt);

  std::vector<json::ordered> rows;
  std::map<std::pair<FieldKey, std::string>, std::size_t> counts;
  bool skipped = false;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    for (const auto& d : diags[i].diagnoses) {
      rows.push_back(json::diagnosis_to_json(res.records[i].id(), d));
      ++counts[{d.field, std::string(to_string(d.kind))}];
    }
    print_skipped(diags[i].skipped);
    skipped = skipped || !diags[i].skipped.empty();
  }
  if (!c.output.empty()) io::write_file_atomic(c.output, jsonl(rows));
  std::printf("%s", kind_table(counts, {"Missing", "IncorrectValue", "Misspelling", "NonCanonical", "Unparseable"})
                        .c_str());
  return res.issues.empty() && !skipped ? kOk : kPartial;
}

int cmd_fix(const Common& c) {
  const auto cfg = make_config(c);
  const auto opt = pipeline_options(c);
  const auto r = resources_for(cfg, opt);
  const auto oracle = make_oracle(cfg, r);
  const auto res = ingest_input(c);
  std::unique_ptr<VersionStore> store;
  if (cfg.journal) store = open_store(cfg, false);

  // the journal's latest snapshot is the record of truth once it exists
  std::vector<EtdRecord> base;
  base.reserve(res.records.size());
  for (const auto& rec : res.records) {
    if (store && store->contains(rec.id())) {
      base.push_back(store->latest(rec.id())->snapshot);
    } else {
      if (store) store->commit(rec, {});
      base.push_back(rec);
    }
  }

  const auto outcomes = run_fix(base, r, *oracle, opt);

  std::vector<EtdRecord> fixed;
  std::vector<json::ordered> diag_rows, action_rows;
  std::map<std::pair<FieldKey, std::string>, std::size_t> action_counts, unresolved;
  std::size_t new_versions = 0;
  bool skipped = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& id = base[i].id();
    const auto& o = outcomes[i];
    for (const auto& d : o.diagnosis.diagnoses) diag_rows.push_back(json::diagnosis_to_json(id, d));
    for (const auto& a : o.ecc.actions) {
      json::ordered j;
      j["record_id"] = id;
      j.update(json::action_to_json(a));
      action_rows.push_back(std::move(j));
      ++action_counts[{a.field, std::string(to_string(a.kind))}];
    }
    for (const auto f : o.ecc.log.unresolved) ++unresolved[{f, "unresolved"}];
    for (const auto& note : o.ecc.log.notes) std::fprintf(stderr, "%s\n", note.c_str());
    print_skipped(o.diagnosis.skipped);
    skipped = skipped || !o.diagnosis.skipped.empty();
    if (store && store->commit(o.ecc.record, o.ecc.actions)) ++new_versions;
    fixed.push_back(o.ecc.record);
  }

  if (!c.output.empty()) {
    const fs::path out = c.output;
    io::write_file_atomic(out, io::format_records(fixed, output_format(c, out), true));
    io::write_file_atomic(out.string() + ".diagnoses.jsonl", jsonl(diag_rows));
    io::write_file_atomic(out.string() + ".actions.jsonl", jsonl(action_rows));
  }
  std::printf("%s", kind_table(action_counts, {"FillMissing", "Overwrite", "SpellFix", "Canonicalize", "ParseSplit",
                                                "DateSplit"})
                        .c_str());
  std::printf("%s", kind_table(unresolved, {"unresolved"}).c_str());
  std::printf("new_versions\t%zu\n", new_versions);
  return res.issues.empty() && !skipped ? kOk : kPartial;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : io::read_file(p)) {
    if (ch == '\n') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

int cmd_evaluate(const Common& c, const std::string& gold_path, const std::string& diag_path,
                 const std::string& action_path) {
  const auto cfg = make_config(c);
  const auto gold = read_gold(need(gold_path, "--gold"));
  const auto res = ingest_input(c);

  std::vector<DiagnosedField> diagnosed;
  std::vector<RecordOutcome> outcomes;
  if (diag_path.empty() != action_path.empty()) throw ConfigError("--diagnoses and --actions go together");
  if (!diag_path.empty()) {
    // predictions from an earlier fix run; --input is its corrected output
    for (const auto& line : read_lines(diag_path)) {
      const auto j = nlohmann::ordered_json::parse(line);
      const auto field = field_from_column(j.at("field").get<std::string>());
      const auto kind = error_kind_from_string(j.at("kind").get<std::string>());
      if (!field || !kind) throw ParseError(diag_path + ": unknown field or kind");
      diagnosed.push_back({j.at("record_id").get<std::string>(), *field, *kind});
    }
    std::map<std::string, std::vector<CorrectionAction>> actions;
    for (const auto& line : read_lines(action_path)) {
      const auto j = nlohmann::ordered_json::parse(line);
      actions[j.at("record_id").get<std::string>()].push_back(json::action_from_json(j));
    }
    for (const auto& rec : res.records) outcomes.push_back({rec, actions[rec.id()]});
  } else {
    const auto opt = pipeline_options(c);
    const auto r = resources_for(cfg, opt);
    const auto oracle = make_oracle(cfg, r);
    const auto fixed = run_fix(res.records, r, *oracle, opt);
    for (std::size_t i = 0; i < fixed.size(); ++i) {
      for (const auto& d : fixed[i].diagnosis.diagnoses) diagnosed.push_back({res.records[i].id(), d.field, d.kind});
      outcomes.push_back({fixed[i].ecc.record, fixed[i].ecc.actions});
    }
  }

  std::set<std::string> predicted, labelled;
  for (const auto& rec : res.records) predicted.insert(rec.id());
  for (const auto& g : gold) labelled.insert(g.record_id);
  std::size_t unmatched = 0;
  for (const auto& id : labelled) {
    if (!predicted.contains(id)) {
      std::fprintf(stderr, "unmatched: %s has labels but no prediction\n", id.c_str());
      ++unmatched;
    }
  }
  for (const auto& id : predicted) {
    if (!labelled.contains(id)) {
      std::fprintf(stderr, "unmatched: %s has a prediction but no labels\n", id.c_str());
      ++unmatched;
    }
  }

  EvalReport report;
  report.ed = score_detection(diagnosed, gold);
  report.ecc = score_ecc(outcomes, gold, cfg.date_order);
  const auto text = format_report_text(report);
  if (!c.output.empty()) {
    io::write_file_atomic(c.output + ".txt", text);
    io::write_file_atomic(c.output + ".json", format_report_json(report));
  }
  std::printf("%s", text.c_str());
  return unmatched == 0 && res.issues.empty() ? kOk : kPartial;
}

std::string render_field(const std::optional<std::string>& v) { return v ? *v : "(missing)"; }

int cmd_history(const Common& c, const std::string& id, bool as_json) {
  const auto cfg = make_config(c);
  const auto store = open_store(cfg, true);
  for (const auto& v : store->history(id)) {
    if (as_json) {
      std::printf("%s\n", serialize_version(v).c_str());
      continue;
    }
    std::string summary;
    for (const auto& a : v.change_summary) {
      if (!summary.empty()) summary += ", ";
      summary += std::string(to_string(a.kind)) + ":" + std::string(field_column(a.field));
    }
    std::printf("%d\t%s\t%s\n", v.version, v.timestamp.c_str(), summary.empty() ? "-" : summary.c_str());
  }
  return kOk;
}

int cmd_rollback(const Common& c, const std::string& id, int to) {
  const auto cfg = make_config(c);
  auto store = open_store(cfg, false);
  store->rollback(id, to);
  std::printf("%d\n", store->latest(id)->version);
  return kOk;
}

int cmd_diff(const Common& c, const std::string& id, int a, int b) {
  const auto cfg = make_config(c);
  const auto store = open_store(cfg, true);
  for (const auto& d : store->diff(id, a, b)) {
    std::printf("%s\t%s\t%s\n", std::string(field_column(d.field)).c_str(), render_field(d.a).c_str(),
                render_field(d.b).c_str());
  }
  return kOk;
}

NoiseConfig load_noise(const std::string& path) {
  NoiseConfig n;
  try {
    const auto j = nlohmann::json::parse(io::read_file(path));
    if (j.contains("seed")) n.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& [name, v] : j.at("fields").items()) {
      const auto f = field_from_column(name);
      if (!f) throw ConfigError(path + ": unknown field '" + name + "'");
      auto& fn = n.fields[index_of(*f)];
      for (const auto& [k, p] : v.items()) {
        if (k == "drop") fn.drop = p.get<double>();
        else if (k == "typo") fn.typo = p.get<double>();
        else if (k == "acronymize") fn.acronymize = p.get<double>();
        else if (k == "wrong_value") fn.wrong_value = p.get<double>();
        else throw ConfigError(path + ": unknown noise kind '" + k + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return n;
}

std::string noise_json(const NoiseConfig& n) {
  nlohmann::ordered_json fields = nlohmann::ordered_json::object();
  for (const auto f : kAllFields) {
    const auto& fn = n.fields[index_of(f)];
    if (fn.drop == 0 && fn.typo == 0 && fn.acronymize == 0 && fn.wrong_value == 0) continue;
    fields[std::string(field_column(f))] = {
        {"drop", fn.drop}, {"typo", fn.typo}, {"acronymize", fn.acronymize}, {"wrong_value", fn.wrong_value}};
  }
  return fields.dump();
}

int cmd_inject(const Common& c, const std::string& noise_path) {
  const auto cfg = make_config(c);
  auto noise = load_noise(need(noise_path, "--noise"));
  if (c.seed) noise.seed = *c.seed;
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto r = load_resources(cfg);
  const auto res = ingest_input(c);
  const auto out = inject_noise(res.records, noise, {&r.universities, &r.degrees, &r.departments});
  for (const auto& note : out.notes) std::fprintf(stderr, "%s\n", note.c_str());

  const fs::path path = need(c.output, "--output");
  io::write_file_atomic(path, io::format_records(out.records, output_format(c, path)));
  io::write_file_atomic(path.string() + ".gold.csv", format_gold(out.labels));
  nlohmann::ordered_json m;
  m["command"] = "inject";
  m["input"] = fs::path(c.input).filename().string();
  m["seed"] = noise.seed;
  m["noise"] = nlohmann::ordered_json::parse(noise_json(noise));
  m["records"] = out.records.size();
  m["corrupted_fields"] = out.labels.size();
  io::write_file_atomic(path.string() + ".manifest.json", m.dump(2) + "\n");
  std::printf("records\t%zu\ncorrupted_fields\t%zu\n", out.records.size(), out.labels.size());
  return res.issues.empty() ? kOk : kPartial;
}

int cmd_sample(const Common& c, const std::vector<std::string>& criteria) {
  if (criteria.empty()) throw ConfigError("--criterion is required");
  const auto cfg = make_config(c);
  const auto r = load_resources(cfg);
  const auto res = ingest_input(c);
  SampleContext ctx{&r.universities, &r.degrees, &r.departments, {}, cfg.date_order};
  if (cfg.stem_departments) ctx.stem_departments = load_name_list(*cfg.stem_departments);
  const std::uint64_t seed = c.seed.value_or(0);

  std::vector<std::vector<EtdRecord>> parts;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    // one derived seed per criterion so adding a criterion leaves earlier draws alone
    auto s = stratified_sample(res.records, parse_criterion(criteria[i]), seed + i, ctx);
    for (const auto& note : s.notes) std::fprintf(stderr, "%s: %s\n", criteria[i].c_str(), note.c_str());
    parts.push_back(std::move(s.records));
  }
  const auto sample = combine_samples(parts);

  const fs::path path = need(c.output, "--output");
  io::write_file_atomic(path, io::format_records(sample, output_format(c, path)));
  nlohmann::ordered_json m;
  m["command"] = "sample";
  m["input"] = fs::path(c.input).filename().string();
  m["seed"] = seed;
  m["criteria"] = criteria;
  m["records"] = sample.size();
  io::write_file_atomic(path.string() + ".manifest.json", m.dump(2) + "\n");
  std::printf("records\t%zu\n", sample.size());
  return res.issues.empty() ? kOk : kPartial;
}

void add_common(CLI::App* sub, Common& c, bool io_flags) {
  sub->add_option("--config", c.config, "JSON configuration file");
  sub->add_option("--journal", c.journal, "version journal (overrides the config)");
  if (io_flags) {
    sub->add_option("--input", c.input, "records file (CSV or JSON lines)");
    sub->add_option("--output", c.output, "output file");
    sub->add_option("--format", c.format, "csv or jsonl (default: from the file extension)");
  }
}

void add_pipeline(CLI::App* sub, Common& c) {
  sub->add_option("--oracle", c.oracle, "extraction sidecar: directory or JSON-lines file");
  sub->add_option("--threshold", c.threshold, "department similarity threshold in (0, 1]");
  sub->add_option("--jobs", c.jobs, "worker threads (default: processors)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metadata quality checks and repair for electronic theses and dissertations"};
  app.require_subcommand(1);
  Common c;
  std::string gold, diag_path, action_path, record_id, noise;
  std::vector<std::string> criteria;
  int from = 0, to = 0;
  bool json_out = false;

  auto* ingest = app.add_subcommand("ingest", "Load records and commit version 1 of each new id");
  add_common(ingest, c, true);

  auto* detect = app.add_subcommand("detect", "Write diagnoses as JSON lines and print counts");
  add_common(detect, c, true);
  add_pipeline(detect, c);

  auto* fix = app.add_subcommand("fix", "Correct and canonicalize records, committing each change");
  add_common(fix, c, true);
  add_pipeline(fix, c);

  auto* evaluate = app.add_subcommand("evaluate", "Score detection and correction against gold labels");
  add_common(evaluate, c, true);
  add_pipeline(evaluate, c);
  evaluate->add_option("--gold", gold, "gold label CSV")->required();
  evaluate->add_option("--diagnoses", diag_path, "diagnoses from a previous fix run");
  evaluate->add_option("--actions", action_path, "actions from a previous fix run");

  auto* history = app.add_subcommand("history", "List the versions of a record");
  add_common(history, c, false);
  history->add_option("--id", record_id, "record id")->required();
  history->add_flag("--json", json_out, "print journal lines");

  auto* rollback = app.add_subcommand("rollback", "Restore an earlier version as a new version");
  add_common(rollback, c, false);
  rollback->add_option("--id", record_id, "record id")->required();
  rollback->add_option("--to", to, "target version")->required();

  auto* diff = app.add_subcommand("diff", "Show fields that differ between two versions");
  add_common(diff, c, false);
  diff->add_option("--id", record_id, "record id")->required();
  diff->add_option("--from", from, "older version")->required();
  diff->add_option("--to", to, "newer version")->required();

  auto* inject = app.add_subcommand("inject", "Corrupt a clean corpus and write gold labels");
  add_common(inject, c, true);
  inject->add_option("--noise", noise, "noise configuration JSON")->required();
  inject->add_option("--seed", c.seed, "random seed");

  auto* sample = app.add_subcommand("sample", "Draw a stratified sample");
  add_common(sample, c, true);
  sample->add_option("--criterion", criteria, "e.g. random:100, university:10:10, year:2010-2019:10");
  sample->add_option("--seed", c.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*ingest) return cmd_ingest(c);
    if (*detect) return cmd_detect(c);
    if (*fix) return cmd_fix(c);
    if (*evaluate) return cmd_evaluate(c, gold, diag_path, action_path);
    if (*history) return cmd_history(c, record_id, json_out);
    if (*rollback) return cmd_rollback(c, record_id, to);
    if (*diff) return cmd_diff(c, record_id, from, to);
    if (*inject) return cmd_inject(c, noise);
    if (*sample) return cmd_sample(c, criteria);
  } catch (const StoreBusy& e) {
    std::fprintf(stderr, "etdq: store busy: %s\n", e.what());
    return kConfig;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "etdq: config error: %s\n", e.what());
    return kConfig;
  } catch (const LoadError& e) {
    std::fprintf(stderr, "etdq: %s\n", e.what());
    return kConfig;
  } catch (const NotFound& e) {
    std::fprintf(stderr, "etdq: %s\n", e.what());
    return kPartial;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "etdq: %s\n", e.what());
    return kConfig;
  }
  return kOk;
}
