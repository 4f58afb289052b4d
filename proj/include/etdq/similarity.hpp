#pragma once

#include "etdq/kernels.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace etdq {

// Maps text to a fixed-width real vector. Implementations may throw
// ProviderError; callers skip the similarity step when that happens.
class SimilarityProvider {
 public:
  virtual ~SimilarityProvider() = default;
  virtual std::size_t dimension() const = 0;
  virtual std::vector<double> embed(std::string_view text) const = 0;
};

// Character trigrams of the normalized text (padded with one space on each
// side), weighted tf * idf and hashed into `dimension` buckets. IDF is fitted
// on the reference texts: log((1 + N) / (1 + df)) + 1.
class TrigramTfidfProvider final : public SimilarityProvider {
 public:
  static constexpr std::size_t kDefaultDimension = 4096;

  explicit TrigramTfidfProvider(const std::vector<std::string>& reference,
                                std::size_t dimension = kDefaultDimension);

  std::size_t dimension() const override { return dimension_; }
  std::vector<double> embed(std::string_view text) const override;

  static std::vector<std::u32string> trigrams(std::string_view text);

 private:
  std::size_t bucket(const std::u32string& gram) const;

  std::size_t dimension_;
  double unseen_idf_ = 1.0;
  std::unordered_map<std::u32string, double> idf_;
};

// Precomputed embeddings of a candidate list for argmax queries.
class SimilarityIndex {
 public:
  SimilarityIndex() = default;
  // Candidates are stored in the given order; ties resolve to the lowest
  // position, so pass them sorted when lexicographic tie-breaking matters.
  SimilarityIndex(const SimilarityProvider& provider, std::vector<std::string> candidates,
                  std::vector<std::string> labels);

  struct Hit {
    std::string label;
    std::string candidate;
    double score = 0.0;
  };

  // None when the index is empty.
  std::optional<Hit> best(const SimilarityProvider& provider, std::string_view query,
                          kernels::Exec exec = kernels::Exec::Serial) const;

  std::size_t size() const { return labels_.size(); }

 private:
  std::size_t dim_ = 0;
  std::vector<double> matrix_;
  std::vector<std::string> candidates_;
  std::vector<std::string> labels_;
};

}  // namespace etdq
