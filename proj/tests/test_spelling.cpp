#include "etdq/dictionaries.hpp"
#include "etdq/ecc.hpp"
#include "etdq/evaluation.hpp"
#include "etdq/rng.hpp"
#include "etdq/spelling.hpp"
#include "etdq/text.hpp"
#include "oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace etdq;

namespace {

const SpellChecker& speller() { return *etdq::testing::shipped().department_speller; }

}  // namespace

TEST(Spelling, KnownMisspellingsAgainstOracle) {
  for (const auto& [typo, fix] : {std::pair{"scool", "school"}, std::pair{"muisc", "music"}}) {
    const auto expected = oracle::brute_force_correct(speller(), typo);
    ASSERT_EQ(expected, std::optional<std::string>(fix));
    EXPECT_EQ(speller().correct(typo), expected);
    EXPECT_EQ(speller().correct(typo, kernels::Exec::Parallel), expected);
  }
}

TEST(Spelling, KnownWordIsNotCorrected) {
  EXPECT_FALSE(speller().correct("music"));
  EXPECT_FALSE(correct_spelling("school", speller()));
  EXPECT_EQ(correct_spelling("scool", speller()), "school");
}

TEST(Spelling, DistanceTwoAndNoCandidate) {
  for (const std::string t : {"engnering", "biolgoy", "psycholgy", "qxzvjw", "zzzzzzzzq"}) {
    EXPECT_EQ(speller().correct(t), oracle::brute_force_correct(speller(), t)) << t;
  }
}

TEST(Spelling, RandomTyposMatchOracle) {
  std::vector<std::string> vocab;
  for (const auto& [w, c] : speller().words().counts()) {
    if (w.size() >= 5 && w.size() <= 9 && c > 1000) vocab.push_back(w);
  }
  std::sort(vocab.begin(), vocab.end());
  ASSERT_GT(vocab.size(), 100u);
  Rng rng(3);
  int corrected = 0;
  for (int i = 0; i < 40; ++i) {
    auto typo = random_typo(rng.pick(vocab), rng);
    ASSERT_TRUE(typo);
    if (rng.index(2)) typo = random_typo(*typo, rng);
    const auto expected = oracle::brute_force_correct(speller(), *typo);
    EXPECT_EQ(speller().correct(*typo), expected) << *typo;
    corrected += expected.has_value();
  }
  EXPECT_GT(corrected, 20);
}

TEST(Spelling, Edits1CoversEveryWordAtDistanceOne) {
  const auto& sp = speller();
  const auto token = text::to_u32("muisc");
  const auto e = sp.edits1(token);
  const std::unordered_set<std::u32string> got(e.begin(), e.end());
  for (const auto& w : oracle::single_edits(token, sp.lexicon().alphabet())) {
    if (w != token) EXPECT_TRUE(got.contains(w));
  }
}

TEST(Spelling, TinyListTieBreak) {
  WordFrequencyList w;
  w.add("cart", 5);
  w.add("card", 5);
  w.add("care", 2);
  const SpellChecker sp(w);
  EXPECT_EQ(sp.correct("carx"), "card");  // tie on count, smallest word wins
  w.add("care", 10);
  EXPECT_EQ(SpellChecker(w).correct("carx"), "care");
  EXPECT_TRUE(sp.has_candidate_within("cxrx", 2));
  EXPECT_FALSE(sp.has_candidate_within("zzzzzz", 2));
}
