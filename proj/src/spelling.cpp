#include "etdq/spelling.hpp"

#include "etdq/text.hpp"

#include <unordered_set>

namespace etdq {

SpellChecker::SpellChecker(const WordFrequencyList& words) : words_(words), lexicon_(words_) {}

std::vector<std::u32string> SpellChecker::edits1(std::u32string_view word) const {
  const auto& alphabet = lexicon_.alphabet();
  std::vector<std::u32string> out;
  out.reserve(word.size() * 2 + (2 * word.size() + 1) * alphabet.size());
  const std::u32string w(word);
  for (std::size_t i = 0; i < w.size(); ++i) out.push_back(w.substr(0, i) + w.substr(i + 1));
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    auto t = w;
    std::swap(t[i], t[i + 1]);
    out.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (char32_t c : alphabet) {
      if (c == w[i]) continue;
      auto t = w;
      t[i] = c;
      out.push_back(std::move(t));
    }
  }
  for (std::size_t i = 0; i <= w.size(); ++i) {
    for (char32_t c : alphabet) {
      auto t = w;
      t.insert(t.begin() + static_cast<std::ptrdiff_t>(i), c);
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace {

void consider(const std::string& word, std::uint64_t count, std::optional<std::string>& best,
              std::uint64_t& best_count) {
  if (!best || count > best_count || (count == best_count && word < *best)) {
    best = word;
    best_count = count;
  }
}

}  // namespace

std::optional<std::string> SpellChecker::correct(std::string_view token, kernels::Exec exec) const {
  if (token.empty() || known(token)) return std::nullopt;
  const auto cps = text::to_u32(token);

  std::optional<std::string> best;
  std::uint64_t best_count = 0;
  std::unordered_set<std::u32string> seen;
  for (auto& cand : edits1(cps)) {
    if (!seen.insert(cand).second) continue;
    const auto utf8 = text::to_utf8(cand);
    if (const auto c = words_.count(utf8); c > 0) consider(utf8, c, best, best_count);
  }
  if (best) return best;

  for (const auto& n : kernels::neighbors_within(lexicon_, cps, 2, exec)) {
    if (n.distance == 2) consider(lexicon_.word(n.index), lexicon_.count(n.index), best, best_count);
  }
  return best;
}

bool SpellChecker::has_candidate_within(std::string_view token, int max_distance, kernels::Exec exec) const {
  return kernels::any_within(lexicon_, text::to_u32(token), max_distance, exec);
}

}  // namespace etdq
