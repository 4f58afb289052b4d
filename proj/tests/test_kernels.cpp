#include "etdq/dictionaries.hpp"
#include "etdq/kernels.hpp"
#include "etdq/rng.hpp"
#include "etdq/text.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace etdq;
using kernels::Exec;

namespace {
std::u32string random_word(Rng& rng, std::size_t max_len, const std::u32string& alphabet) {
  std::u32string s;
  const auto n = rng.index(max_len + 1);
  for (std::size_t i = 0; i < n; ++i) s += alphabet[rng.index(alphabet.size())];
  return s;
}
}  // namespace

TEST(DamerauLevenshtein, KnownValues) {
  using kernels::damerau_levenshtein;
  EXPECT_EQ(damerau_levenshtein(U"", U""), 0);
  EXPECT_EQ(damerau_levenshtein(U"abc", U""), 3);
  EXPECT_EQ(damerau_levenshtein(U"muisc", U"music"), 1);
  EXPECT_EQ(damerau_levenshtein(U"scool", U"school"), 1);
  EXPECT_EQ(damerau_levenshtein(U"kitten", U"sitting"), 3);
  // restricted (optimal string alignment) distance would be 3
  EXPECT_EQ(damerau_levenshtein(U"ca", U"abc"), 2);
  EXPECT_EQ(damerau_levenshtein(U"école", U"ecole"), 1);
}

TEST(DamerauLevenshtein, MatchesBreadthFirstOracle) {
  Rng rng(11);
  const std::u32string alphabet = U"abc";
  for (int i = 0; i < 400; ++i) {
    const auto a = random_word(rng, 5, alphabet);
    const auto b = random_word(rng, 5, alphabet);
    ASSERT_EQ(kernels::damerau_levenshtein(a, b), oracle::edit_distance_bfs(a, b))
        << text::to_utf8(a) << " / " << text::to_utf8(b);
  }
}

TEST(DamerauLevenshtein, MetricProperties) {
  Rng rng(12);
  const std::u32string alphabet = U"abcdé";
  for (int i = 0; i < 500; ++i) {
    const auto a = random_word(rng, 8, alphabet), b = random_word(rng, 8, alphabet),
               c = random_word(rng, 8, alphabet);
    const int ab = kernels::damerau_levenshtein(a, b);
    EXPECT_EQ(ab, kernels::damerau_levenshtein(b, a));
    EXPECT_EQ(kernels::damerau_levenshtein(a, a), 0);
    EXPECT_EQ(ab == 0, a == b);
    EXPECT_LE(ab, static_cast<int>(std::max(a.size(), b.size())));
    EXPECT_GE(ab, static_cast<int>(std::max(a.size(), b.size()) - std::min(a.size(), b.size())));
    EXPECT_LE(kernels::damerau_levenshtein(a, c), ab + kernels::damerau_levenshtein(b, c));
  }
}

class LexiconScan : public ::testing::Test {
 protected:
  void SetUp() override {
    Rng rng(5);
    const std::u32string alphabet = U"abcdeé";
    for (int i = 0; i < 3000; ++i) {
      const auto w = random_word(rng, 7, alphabet);
      if (!w.empty()) words.add(text::to_utf8(w), 1 + rng.index(100));
    }
    lex = kernels::Lexicon(words);
  }
  WordFrequencyList words;
  kernels::Lexicon lex;
};

TEST_F(LexiconScan, IndicesFollowWordOrder) {
  ASSERT_EQ(lex.size(), words.size());
  for (std::size_t i = 1; i < lex.size(); ++i) EXPECT_LT(lex.word(i - 1), lex.word(i));
  for (std::size_t i = 0; i < lex.size(); ++i) EXPECT_EQ(lex.count(i), words.count(lex.word(i)));
}

TEST_F(LexiconScan, NeighborsMatchBruteForceInBothModes) {
  Rng rng(6);
  for (int q = 0; q < 60; ++q) {
    const auto token = random_word(rng, 8, U"abcdeéf");
    for (int k = 0; k <= 2; ++k) {
      std::vector<kernels::Neighbor> expected;
      for (std::size_t i = 0; i < lex.size(); ++i) {
        const int d = kernels::damerau_levenshtein(token, lex.code_points(i));
        if (d <= k) expected.push_back({i, d});
      }
      EXPECT_EQ(kernels::neighbors_within(lex, token, k, Exec::Serial), expected);
      EXPECT_EQ(kernels::neighbors_within(lex, token, k, Exec::Parallel), expected);
      EXPECT_EQ(kernels::any_within(lex, token, k, Exec::Serial), !expected.empty());
      EXPECT_EQ(kernels::any_within(lex, token, k, Exec::Parallel), !expected.empty());
    }
  }
}

TEST(ArgmaxCosine, MatchesBruteForceAndTiesGoLow) {
  Rng rng(9);
  const std::size_t dim = 16, rows = 500;
  std::vector<double> m(dim * rows);
  for (auto& x : m) x = static_cast<double>(rng.index(5)) - 2.0;
  // duplicate row 7 later so the tie must resolve to 7
  std::copy(m.begin() + 7 * dim, m.begin() + 8 * dim, m.begin() + 400 * dim);
  for (int q = 0; q < 50; ++q) {
    std::vector<double> query(dim);
    for (auto& x : query) x = static_cast<double>(rng.index(5)) - 2.0;
    if (q == 0) std::copy(m.begin() + 7 * dim, m.begin() + 8 * dim, query.begin());
    std::size_t best = 0;
    double best_score = -2.0;
    for (std::size_t r = 0; r < rows; ++r) {
      const double s = kernels::cosine({m.data() + r * dim, dim}, query);
      if (s > best_score) best = r, best_score = s;
    }
    for (auto exec : {Exec::Serial, Exec::Parallel}) {
      const auto hit = kernels::argmax_cosine(m, dim, query, exec);
      EXPECT_EQ(hit.index, best);
      EXPECT_DOUBLE_EQ(hit.score, best_score);
    }
    if (q == 0) EXPECT_EQ(kernels::argmax_cosine(m, dim, query, Exec::Parallel).index, 7u);
  }
}

TEST(ArgmaxCosine, DegenerateInputs) {
  const std::vector<double> zero(4, 0.0), one = {1, 0, 0, 0};
  EXPECT_EQ(kernels::argmax_cosine({}, 4, one, Exec::Serial).score, 0.0);
  EXPECT_EQ(kernels::argmax_cosine(one, 4, zero, Exec::Parallel).score, 0.0);
  EXPECT_EQ(kernels::cosine(zero, one), 0.0);
  EXPECT_DOUBLE_EQ(kernels::cosine(one, one), 1.0);
}
