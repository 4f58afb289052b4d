#pragma once

#include "etdq/dictionaries.hpp"
#include "etdq/kernels.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etdq {

// Frequency-ranked spelling correction over a word list.
class SpellChecker {
 public:
  SpellChecker() = default;
  explicit SpellChecker(const WordFrequencyList& words);

  bool known(std::string_view token) const { return words_.contains(token); }

  // Returns none for known tokens. Otherwise the most frequent known word at
  // edit distance 1, falling back to distance 2 when distance 1 is empty;
  // ties go to the lexicographically smallest word.
  //
  // Distance-1 candidates come from enumerating every single-edit
  // permutation (delete, transpose, replace, insert over the list's
  // alphabet). The distance-2 step scans the lexicon instead of expanding a
  // second permutation layer; the two yield the same set.
  std::optional<std::string> correct(std::string_view token,
                                     kernels::Exec exec = kernels::Exec::Serial) const;

  // True if some known word lies within max_distance of the token.
  bool has_candidate_within(std::string_view token, int max_distance,
                            kernels::Exec exec = kernels::Exec::Serial) const;

  // Single-edit permutations of a word over the list alphabet (may repeat).
  std::vector<std::u32string> edits1(std::u32string_view word) const;

  const WordFrequencyList& words() const { return words_; }
  const kernels::Lexicon& lexicon() const { return lexicon_; }

 private:
  WordFrequencyList words_;
  kernels::Lexicon lexicon_;
};

}  // namespace etdq
