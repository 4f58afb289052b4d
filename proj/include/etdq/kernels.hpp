#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etdq {
class WordFrequencyList;
}

// Data-parallel inner loops. Every kernel has a serial reference path and an
// OpenMP path; both return identical results (ordering included), which the
// kernel tests check and the benchmark target compares for speed.
namespace etdq::kernels {

enum class Exec { Serial, Parallel };

// Unrestricted Damerau-Levenshtein distance (insert, delete, substitute,
// adjacent transposition), over code points.
int damerau_levenshtein(std::u32string_view a, std::u32string_view b);

// A word list laid out for distance scans: decoded code points, a sorted
// copy of each word's characters for a cheap multiset bound, and the
// frequency. Indices follow lexicographic UTF-8 order of the words.
class Lexicon {
 public:
  Lexicon() = default;
  explicit Lexicon(const WordFrequencyList& words);

  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::u32string& code_points(std::size_t i) const { return decoded_[i]; }
  std::uint64_t count(std::size_t i) const { return counts_[i]; }
  // Sorted set of all code points occurring in the list.
  const std::u32string& alphabet() const { return alphabet_; }

  // Index range of words with the given code-point length.
  std::pair<std::size_t, std::size_t> length_bucket(std::size_t len) const;
  const std::vector<std::size_t>& by_length() const { return by_length_; }
  const std::u32string& sorted_chars(std::size_t i) const { return sorted_[i]; }

 private:
  std::vector<std::string> words_;
  std::vector<std::u32string> decoded_;
  std::vector<std::u32string> sorted_;
  std::vector<std::uint64_t> counts_;
  std::u32string alphabet_;
  // word indices ordered by (length, index) and the bucket start per length
  std::vector<std::size_t> by_length_;
  std::vector<std::size_t> bucket_start_;
};

struct Neighbor {
  std::size_t index = 0;
  int distance = 0;

  bool operator==(const Neighbor&) const = default;
};

// All lexicon words within max_distance of token (distance 0 included),
// sorted by index.
std::vector<Neighbor> neighbors_within(const Lexicon& lexicon, std::u32string_view token,
                                       int max_distance, Exec exec);

// True when some word lies within max_distance.
bool any_within(const Lexicon& lexicon, std::u32string_view token, int max_distance, Exec exec);

struct BestMatch {
  std::size_t index = 0;
  double score = 0.0;
};

// Row-major matrix of vectors of width `dim`. Returns the row with maximal
// cosine similarity to query; ties go to the lowest index. Zero rows score 0.
// An empty matrix or a zero query yields score 0 at index 0.
BestMatch argmax_cosine(std::span<const double> matrix, std::size_t dim,
                        std::span<const double> query, Exec exec);

double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace etdq::kernels
