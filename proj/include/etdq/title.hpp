#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace etdq {

// Document frequencies over a title corpus. Unseen tokens get log(N).
class IdfTable {
 public:
  IdfTable() = default;
  static IdfTable from_corpus(std::span<const std::string> titles);
  // "token<TAB>document_frequency" lines, first line "#documents<TAB>N".
  static IdfTable load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  double idf(const std::string& token) const;
  double default_idf() const;
  std::size_t documents() const { return documents_; }

 private:
  std::size_t documents_ = 0;
  std::unordered_map<std::string, std::size_t> df_;
};

// Tokens used for TF-IDF: whitespace tokens, punctuation stripped, lowercased,
// empty results dropped.
std::vector<std::string> tfidf_tokens(std::string_view title);

inline constexpr std::size_t kTitleFeatureCount = 8;

struct TitleFeatures {
  int token_count = 0;
  int special_char_count = 0;    // code points that are neither alphanumeric nor whitespace
  int capital_letter_count = 0;
  int max_consecutive_punct = 0;
  int stopword_count = 0;
  double tfidf_min = 0;
  double tfidf_max = 0;
  double tfidf_median = 0;

  std::array<double, kTitleFeatureCount> as_array() const;
  bool operator==(const TitleFeatures&) const = default;
};

TitleFeatures extract_title_features(std::string_view title, const IdfTable& idf);

bool is_stopword(std::string_view lowercase_token);

struct TitleModel {
  std::array<double, kTitleFeatureCount> weights{};
  double bias = 0.0;
  double threshold = 0.5;

  static TitleModel load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
};

enum class TitleLabel { Valid, Invalid };

struct TitleVerdict {
  TitleLabel label = TitleLabel::Valid;
  double score = 0.0;  // probability of a valid title
};

// score = logistic(w.f + b); Invalid iff score < threshold.
TitleVerdict classify_title(const TitleFeatures& features, const TitleModel& model);

struct LabeledFeatures {
  TitleFeatures features;
  TitleLabel label;
};

struct TrainOptions {
  std::uint64_t seed = 1;
  int epochs = 4000;
  double learning_rate = 0.2;
  double l2 = 1e-4;
  double threshold = 0.5;
};

// Class-balanced logistic regression fitted by full-batch gradient descent on
// standardized features, then folded back to raw-feature weights. Throws
// std::invalid_argument unless both labels are present.
TitleModel train_title_classifier(std::span<const LabeledFeatures> examples, const TrainOptions& options = {});

struct BinaryScore {
  std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
  double precision() const;
  double recall() const;
  double f1() const;
  double accuracy() const;
};

// Scores Invalid as the positive class.
BinaryScore score_titles(std::span<const LabeledFeatures> examples, const TitleModel& model);

}  // namespace etdq
