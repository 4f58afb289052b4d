#include "etdq/config.hpp"

#include "etdq/departments.hpp"
#include "etdq/errors.hpp"
#include "etdq/records_io.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace etdq {

PipelineConfig PipelineConfig::defaults(const std::filesystem::path& data_dir) {
  PipelineConfig c;
  c.universities = data_dir / "universities.tsv";
  c.degrees = data_dir / "degrees.tsv";
  c.departments = data_dir / "departments.tsv";
  c.words = data_dir / "words_en.tsv";
  c.title_model = data_dir / "title_model.json";
  c.title_idf = data_dir / "title_idf.tsv";
  c.stem_departments = data_dir / "stem_departments.txt";
  return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path, const PipelineConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path.string() + ": expected a JSON object");

  const auto dir = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : dir / fp;
  };

  PipelineConfig c = base;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "universities") c.universities = resolve(v.get<std::string>());
      else if (key == "degrees") c.degrees = resolve(v.get<std::string>());
      else if (key == "departments") c.departments = resolve(v.get<std::string>());
      else if (key == "words") c.words = resolve(v.get<std::string>());
      else if (key == "title_model") c.title_model = resolve(v.get<std::string>());
      else if (key == "title_idf") c.title_idf = v.is_null() ? std::nullopt : std::optional(resolve(v.get<std::string>()));
      else if (key == "oracle") c.oracle = v.is_null() ? std::nullopt : std::optional(resolve(v.get<std::string>()));
      else if (key == "journal") c.journal = v.is_null() ? std::nullopt : std::optional(resolve(v.get<std::string>()));
      else if (key == "stem_departments") {
        c.stem_departments = v.is_null() ? std::nullopt : std::optional(resolve(v.get<std::string>()));
      } else if (key == "similarity_threshold") c.similarity_threshold = v.get<double>();
      else if (key == "year_range") {
        if (!v.is_array() || v.size() != 2) throw ConfigError("year_range must be [min, max]");
        c.years = {v[0].get<int>(), v[1].get<int>()};
      } else if (key == "date_order") {
        const auto s = v.get<std::string>();
        if (s == "month-first") c.date_order = DateOrder::MonthFirst;
        else if (s == "day-first") c.date_order = DateOrder::DayFirst;
        else throw ConfigError("date_order must be month-first or day-first");
      } else if (key == "missing_sentinels") c.missing_sentinels = v.get<std::vector<std::string>>();
      else if (key == "remote_judge_url") {
        c.remote_judge_url = v.is_null() ? std::nullopt : std::optional(v.get<std::string>());
      } else if (key == "remote_judge_timeout_ms") c.remote_judge_timeout = std::chrono::milliseconds(v.get<long>());
      else if (key == "journal_fsync") c.journal_fsync = v.get<bool>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return c;
}

void PipelineConfig::validate() const {
  if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0)) {
    throw ConfigError("similarity_threshold must be in (0, 1]");
  }
  if (years.min_year > years.max_year) throw ConfigError("year_range min exceeds max");
  if (remote_judge_timeout.count() <= 0) throw ConfigError("remote_judge_timeout_ms must be positive");
  auto need = [](const std::filesystem::path& p, const char* what) {
    if (!std::filesystem::exists(p)) throw ConfigError(std::string(what) + " not found: " + p.string());
  };
  need(universities, "university dictionary");
  need(degrees, "degree dictionary");
  need(departments, "department dictionary");
  need(words, "word list");
  need(title_model, "title model");
  if (title_idf) need(*title_idf, "title IDF table");
  if (oracle) need(*oracle, "extraction oracle");
  if (stem_departments) need(*stem_departments, "STEM department list");
}

std::vector<std::string> load_name_list(const std::filesystem::path& path) {
  std::vector<std::string> out;
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    const auto t = text::trim(line);
    if (!t.empty() && t.front() != '#') out.emplace_back(t);
  }
  return out;
}

Resources load_resources(const PipelineConfig& cfg) {
  cfg.validate();
  Resources r;
  try {
    r.universities = AliasDictionary::load(cfg.universities);
    r.degrees = AliasDictionary::load(cfg.degrees);
    r.departments = load_department_dictionary(cfg.departments);
    r.department_speller =
        std::make_shared<SpellChecker>(department_vocabulary(WordFrequencyList::load(cfg.words), r.departments));
    r.title_model = TitleModel::load(cfg.title_model);
    if (cfg.title_idf) r.title_idf = IdfTable::load(*cfg.title_idf);
  } catch (const LoadError& e) {
    throw ConfigError(e.what());
  }
  if (cfg.remote_judge_url) {
    r.judge = std::make_shared<RemoteNameJudge>(*cfg.remote_judge_url, cfg.remote_judge_timeout);
  }
  r.years = cfg.years;
  r.date_order = cfg.date_order;
  r.missing = MissingPolicy(cfg.missing_sentinels);
  r.similarity_threshold = cfg.similarity_threshold;
  finish_resources(r);
  return r;
}

}  // namespace etdq
