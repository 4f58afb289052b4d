#include "etdq/similarity.hpp"
#include "etdq/text.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

using namespace etdq;

namespace {
// Unhashed trigram TF-IDF cosine computed from scratch.
double sparse_cosine(const std::vector<std::string>& reference, const std::string& a, const std::string& b) {
  std::map<std::u32string, int> df;
  for (const auto& r : reference) {
    const auto g = TrigramTfidfProvider::trigrams(r);
    for (const auto& x : std::set<std::u32string>(g.begin(), g.end())) ++df[x];
  }
  const double n = static_cast<double>(reference.size());
  auto vec = [&](const std::string& s) {
    std::map<std::u32string, double> v;
    for (const auto& g : TrigramTfidfProvider::trigrams(s)) {
      const auto it = df.find(g);
      v[g] += it == df.end() ? std::log(1 + n) + 1 : std::log((1 + n) / (1 + it->second)) + 1;
    }
    return v;
  };
  const auto va = vec(a), vb = vec(b);
  double dot = 0, na = 0, nb = 0;
  for (const auto& [g, x] : va) {
    na += x * x;
    if (const auto it = vb.find(g); it != vb.end()) dot += x * it->second;
  }
  for (const auto& [g, x] : vb) nb += x * x;
  return na == 0 || nb == 0 ? 0 : dot / std::sqrt(na * nb);
}
}  // namespace

TEST(Trigrams, PaddedNormalizedGrams) {
  const auto g = TrigramTfidfProvider::trigrams("cs.");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0], U" CS");
  EXPECT_EQ(g[1], U"CS ");
  EXPECT_TRUE(TrigramTfidfProvider::trigrams("...").empty());
}

TEST(Trigrams, HashedCosineMatchesSparseOracle) {
  const std::vector<std::string> ref = {"COMPUTER SCIENCE", "MUSIC", "MUSIC EDUCATION", "PUBLIC HEALTH",
                                        "MATERIALS SCIENCE AND ENGINEERING"};
  const TrigramTfidfProvider p(ref, 1u << 20);
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"Computer Sciences", "COMPUTER SCIENCE"},
           {"music educ", "MUSIC EDUCATION"},
           {"public health", "PUBLIC HEALTH"},
           {"xyz", "MUSIC"}}) {
    EXPECT_NEAR(kernels::cosine(p.embed(a), p.embed(b)), sparse_cosine(ref, a, b), 1e-12) << a;
  }
}

TEST(SimilarityIndex, BestHitAndModesAgree) {
  const auto& r = etdq::testing::shipped();
  for (const char* q : {"COMPUTER SCIENCES", "MECHANICAL ENGINEERINGS", "ELECTRICAL AND COMPUTER ENGR"}) {
    const auto a = r.department_index.best(*r.similarity, q, kernels::Exec::Serial);
    const auto b = r.department_index.best(*r.similarity, q, kernels::Exec::Parallel);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->label, b->label);
    EXPECT_EQ(a->score, b->score);
  }
  EXPECT_EQ(r.department_index.best(*r.similarity, "COMPUTER SCIENCES")->label, "Computer Science");
  EXPECT_FALSE(SimilarityIndex().best(*r.similarity, "anything"));
}

TEST(SimilarityIndex, SelfSimilarityIsOne) {
  const auto& r = etdq::testing::shipped();
  const auto hit = r.department_index.best(*r.similarity, "MUSIC");
  ASSERT_TRUE(hit);
  EXPECT_EQ(hit->label, "Music");
  EXPECT_NEAR(hit->score, 1.0, 1e-12);
}
