#include "etdq/similarity.hpp"

#include "etdq/text.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace etdq {

std::vector<std::u32string> TrigramTfidfProvider::trigrams(std::string_view text) {
  const auto normalized = text::normalize_surface(text);
  if (normalized.empty()) return {};
  const auto padded = U" " + text::to_u32(normalized) + U" ";
  std::vector<std::u32string> out;
  for (std::size_t i = 0; i + 3 <= padded.size(); ++i) out.push_back(padded.substr(i, 3));
  return out;
}

TrigramTfidfProvider::TrigramTfidfProvider(const std::vector<std::string>& reference, std::size_t dimension)
    : dimension_(dimension) {
  if (dimension == 0) throw std::invalid_argument("embedding dimension must be positive");
  std::unordered_map<std::u32string, std::size_t> df;
  for (const auto& r : reference) {
    auto grams = trigrams(r);
    std::unordered_set<std::u32string> unique(grams.begin(), grams.end());
    for (const auto& g : unique) ++df[g];
  }
  const double n = static_cast<double>(reference.size());
  for (const auto& [g, d] : df) idf_[g] = std::log((1.0 + n) / (1.0 + static_cast<double>(d))) + 1.0;
  unseen_idf_ = std::log(1.0 + n) + 1.0;
}

std::size_t TrigramTfidfProvider::bucket(const std::u32string& gram) const {
  // FNV-1a over the code points; stable across platforms, unlike std::hash
  std::uint64_t h = 1469598103934665603ull;
  for (char32_t c : gram) {
    for (int shift = 0; shift < 32; shift += 8) {
      h ^= (static_cast<std::uint64_t>(c) >> shift) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return static_cast<std::size_t>(h % dimension_);
}

std::vector<double> TrigramTfidfProvider::embed(std::string_view text) const {
  std::vector<double> v(dimension_, 0.0);
  std::unordered_map<std::u32string, int> tf;
  for (auto& g : trigrams(text)) ++tf[g];
  for (const auto& [g, count] : tf) {
    const auto it = idf_.find(g);
    v[bucket(g)] += count * (it == idf_.end() ? unseen_idf_ : it->second);
  }
  return v;
}

SimilarityIndex::SimilarityIndex(const SimilarityProvider& provider, std::vector<std::string> candidates,
                                 std::vector<std::string> labels)
    : dim_(provider.dimension()), candidates_(std::move(candidates)), labels_(std::move(labels)) {
  if (candidates_.size() != labels_.size()) throw std::invalid_argument("candidate/label size mismatch");
  matrix_.reserve(candidates_.size() * dim_);
  for (const auto& c : candidates_) {
    const auto v = provider.embed(c);
    matrix_.insert(matrix_.end(), v.begin(), v.end());
  }
}

std::optional<SimilarityIndex::Hit> SimilarityIndex::best(const SimilarityProvider& provider,
                                                          std::string_view query, kernels::Exec exec) const {
  if (labels_.empty()) return std::nullopt;
  const auto q = provider.embed(query);
  const auto m = kernels::argmax_cosine(matrix_, dim_, q, exec);
  return Hit{labels_[m.index], candidates_[m.index], m.score};
}

}  // namespace etdq
