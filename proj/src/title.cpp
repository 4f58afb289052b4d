#include "etdq/title.hpp"

#include "etdq/errors.hpp"
#include "etdq/text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_set>

namespace etdq {

namespace {

const std::unordered_set<std::string_view>& stopwords() {
  static const std::unordered_set<std::string_view> words = {
      "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",      "an",
      "and",     "any",     "are",    "as",      "at",     "be",      "because", "been",    "before",
      "being",   "below",   "between", "both",   "but",    "by",      "can",     "could",   "did",
      "do",      "does",    "doing",  "down",    "during", "each",    "few",     "for",     "from",
      "further", "had",     "has",    "have",    "having", "he",      "her",     "here",    "hers",
      "him",     "his",     "how",    "i",       "if",     "in",      "into",    "is",      "it",
      "its",     "just",    "me",     "more",    "most",   "my",      "no",      "nor",     "not",
      "now",     "of",      "off",    "on",      "once",   "only",    "or",      "other",   "our",
      "ours",    "out",     "over",   "own",     "same",   "she",     "should",  "so",      "some",
      "such",    "than",    "that",   "the",     "their",  "theirs",  "them",    "then",    "there",
      "these",   "they",    "this",   "those",   "through", "to",     "too",     "under",   "until",
      "up",      "very",    "was",    "we",      "were",   "what",    "when",    "where",   "which",
      "while",   "who",     "whom",   "why",     "will",   "with",    "you",     "your",    "toward",
      "towards", "within",  "without", "upon",   "among",  "via"};
  return words;
}

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

bool is_stopword(std::string_view lowercase_token) { return stopwords().contains(lowercase_token); }

std::vector<std::string> tfidf_tokens(std::string_view title) {
  std::vector<std::string> out;
  for (const auto& tok : text::split_whitespace(title)) {
    auto t = text::to_lower(text::strip_punct(tok.text));
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

IdfTable IdfTable::from_corpus(std::span<const std::string> titles) {
  IdfTable table;
  table.documents_ = titles.size();
  for (const auto& t : titles) {
    auto toks = tfidf_tokens(t);
    std::sort(toks.begin(), toks.end());
    toks.erase(std::unique(toks.begin(), toks.end()), toks.end());
    for (auto& tok : toks) ++table.df_[tok];
  }
  return table;
}

IdfTable IdfTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  IdfTable table;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw LoadError(path.string() + ": malformed IDF line");
    const auto key = line.substr(0, tab);
    const auto value = std::stoull(line.substr(tab + 1));
    if (header) {
      if (key != "#documents") throw LoadError(path.string() + ": missing #documents header");
      table.documents_ = value;
      header = false;
    } else {
      table.df_[key] = value;
    }
  }
  return table;
}

void IdfTable::save(const std::filesystem::path& path) const {
  std::vector<std::pair<std::string, std::size_t>> rows(df_.begin(), df_.end());
  std::sort(rows.begin(), rows.end());
  std::ofstream out(path);
  out << "#documents\t" << documents_ << "\n";
  for (auto& [k, v] : rows) out << k << "\t" << v << "\n";
}

double IdfTable::default_idf() const {
  return documents_ == 0 ? 0.0 : std::log(static_cast<double>(documents_));
}

double IdfTable::idf(const std::string& token) const {
  const auto it = df_.find(token);
  if (it == df_.end() || it->second == 0) return default_idf();
  return std::log(static_cast<double>(documents_) / static_cast<double>(it->second));
}

std::array<double, kTitleFeatureCount> TitleFeatures::as_array() const {
  return {static_cast<double>(token_count),
          static_cast<double>(special_char_count),
          static_cast<double>(capital_letter_count),
          static_cast<double>(max_consecutive_punct),
          static_cast<double>(stopword_count),
          tfidf_min,
          tfidf_max,
          tfidf_median};
}

TitleFeatures extract_title_features(std::string_view title, const IdfTable& idf) {
  TitleFeatures f;
  const auto cps = text::to_u32(title);
  int run = 0;
  for (char32_t c : cps) {
    if (!text::is_alnum(c) && !text::is_space(c)) ++f.special_char_count;
    if (text::is_upper(c)) ++f.capital_letter_count;
    if (text::is_punct(c)) {
      f.max_consecutive_punct = std::max(f.max_consecutive_punct, ++run);
    } else {
      run = 0;
    }
  }

  const auto words = text::split_whitespace(title);
  f.token_count = static_cast<int>(words.size());
  for (const auto& w : words) {
    if (is_stopword(text::to_lower(text::strip_punct(w.text)))) ++f.stopword_count;
  }

  const auto toks = tfidf_tokens(title);
  if (!toks.empty()) {
    std::unordered_map<std::string, int> tf;
    for (const auto& t : toks) ++tf[t];
    std::vector<double> scores;
    scores.reserve(toks.size());
    const double n = static_cast<double>(toks.size());
    for (const auto& t : toks) scores.push_back(tf[t] / n * idf.idf(t));
    std::sort(scores.begin(), scores.end());
    f.tfidf_min = scores.front();
    f.tfidf_max = scores.back();
    const auto mid = scores.size() / 2;
    f.tfidf_median = scores.size() % 2 ? scores[mid] : (scores[mid - 1] + scores[mid]) / 2.0;
  }
  return f;
}

TitleVerdict classify_title(const TitleFeatures& features, const TitleModel& model) {
  const auto x = features.as_array();
  double z = model.bias;
  for (std::size_t i = 0; i < x.size(); ++i) z += model.weights[i] * x[i];
  const double score = logistic(z);
  return {score < model.threshold ? TitleLabel::Invalid : TitleLabel::Valid, score};
}

TitleModel TitleModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open " + path.string());
  try {
    const auto doc = nlohmann::json::parse(in);
    TitleModel m;
    const auto& w = doc.at("weights");
    if (w.size() != kTitleFeatureCount) throw LoadError(path.string() + ": expected 8 weights");
    for (std::size_t i = 0; i < kTitleFeatureCount; ++i) m.weights[i] = w.at(i).get<double>();
    m.bias = doc.at("bias").get<double>();
    m.threshold = doc.value("threshold", 0.5);
    if (!(m.threshold > 0.0 && m.threshold < 1.0)) throw LoadError(path.string() + ": threshold outside (0,1)");
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw LoadError(path.string() + ": " + e.what());
  }
}

void TitleModel::save(const std::filesystem::path& path) const {
  nlohmann::ordered_json doc;
  doc["features"] = {"token_count",   "special_char_count", "capital_letter_count", "max_consecutive_punct",
                     "stopword_count", "tfidf_min",         "tfidf_max",            "tfidf_median"};
  doc["weights"] = weights;
  doc["bias"] = bias;
  doc["threshold"] = threshold;
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

TitleModel train_title_classifier(std::span<const LabeledFeatures> examples, const TrainOptions& options) {
  std::size_t valid = 0;
  for (const auto& e : examples) valid += e.label == TitleLabel::Valid;
  const std::size_t invalid = examples.size() - valid;
  if (valid == 0 || invalid == 0) {
    throw std::invalid_argument("title classifier needs both valid and invalid examples");
  }

  constexpr std::size_t d = kTitleFeatureCount;
  const auto n = examples.size();
  std::vector<std::array<double, d>> x(n);
  std::array<double, d> mean{}, sd{};
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = examples[i].features.as_array();
    for (std::size_t k = 0; k < d; ++k) mean[k] += x[i][k];
  }
  for (auto& m : mean) m /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) sd[k] += (x[i][k] - mean[k]) * (x[i][k] - mean[k]);
  }
  for (auto& s : sd) {
    s = std::sqrt(s / static_cast<double>(n));
    if (s < 1e-12) s = 1.0;
  }
  for (auto& row : x) {
    for (std::size_t k = 0; k < d; ++k) row[k] = (row[k] - mean[k]) / sd[k];
  }

  // class weights so each label contributes half of the loss
  const double w_valid = 0.5 / static_cast<double>(valid);
  const double w_invalid = 0.5 / static_cast<double>(invalid);

  std::mt19937_64 rng(options.seed);
  std::array<double, d> w{};
  for (auto& wk : w) wk = (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5) * 1e-3;
  double b = 0.0;

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::array<double, d> grad{};
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = b;
      for (std::size_t k = 0; k < d; ++k) z += w[k] * x[i][k];
      const double y = examples[i].label == TitleLabel::Valid ? 1.0 : 0.0;
      const double weight = y > 0.5 ? w_valid : w_invalid;
      const double err = (logistic(z) - y) * weight;
      for (std::size_t k = 0; k < d; ++k) grad[k] += err * x[i][k];
      grad_b += err;
    }
    for (std::size_t k = 0; k < d; ++k) w[k] -= options.learning_rate * (grad[k] + options.l2 * w[k]);
    b -= options.learning_rate * grad_b;
  }

  TitleModel model;
  model.threshold = options.threshold;
  model.bias = b;
  for (std::size_t k = 0; k < d; ++k) {
    model.weights[k] = w[k] / sd[k];
    model.bias -= w[k] * mean[k] / sd[k];
  }
  return model;
}

double BinaryScore::precision() const { return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / (tp + fp); }
double BinaryScore::recall() const { return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / (tp + fn); }
double BinaryScore::f1() const {
  const double p = precision(), r = recall();
  return p + r == 0 ? 0.0 : 2 * p * r / (p + r);
}
double BinaryScore::accuracy() const {
  const auto total = tp + fp + fn + tn;
  return total == 0 ? 0.0 : static_cast<double>(tp + tn) / total;
}

BinaryScore score_titles(std::span<const LabeledFeatures> examples, const TitleModel& model) {
  BinaryScore s;
  for (const auto& e : examples) {
    const bool predicted_invalid = classify_title(e.features, model).label == TitleLabel::Invalid;
    const bool invalid = e.label == TitleLabel::Invalid;
    if (predicted_invalid && invalid) ++s.tp;
    else if (predicted_invalid) ++s.fp;
    else if (invalid) ++s.fn;
    else ++s.tn;
  }
  return s;
}

}  // namespace etdq
