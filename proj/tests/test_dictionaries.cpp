#include "etdq/departments.hpp"
#include "etdq/dictionaries.hpp"
#include "etdq/errors.hpp"
#include "etdq/text.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <set>

using namespace etdq;

namespace {
std::filesystem::path write_fixture(const std::string& name, const std::string& content) {
  static const auto dir = etdq::testing::scratch_dir("dict");
  const auto p = dir / name;
  std::ofstream(p) << content;
  return p;
}
}  // namespace

TEST(AliasDictionary, LoadsTsvLine) {
  const auto d = AliasDictionary::load(
      write_fixture("gt.tsv", "Georgia Institute of Technology\tGEORGIA TECH\tGT\tGIT\n"));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.entries()[0].aliases.size(), 3u);
  EXPECT_EQ(d.key_count(), 4u);
}

TEST(AliasDictionary, EmptyFile) {
  const auto d = AliasDictionary::load(write_fixture("empty.tsv", ""));
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(d.lookup("anything").kind, MatchKind::NotFound);
}

TEST(AliasDictionary, SharedAliasIsALoadError) {
  const auto p = write_fixture("clash.tsv",
                               "Materials Science and Engineering\tMSE\n"
                               "Mechanical and Systems Engineering\tMSE\n");
  EXPECT_THROW(AliasDictionary::load(p), LoadError);
}

TEST(AliasDictionary, DuplicateAliasWithinEntryIsDropped) {
  const AliasDictionary d({{"Master of Philosophy", {"MPHIL", "M.Phil", "M PHIL"}}});
  EXPECT_EQ(d.entries()[0].aliases, (std::vector<std::string>{"MPHIL", "M PHIL"}));
}

TEST(AliasDictionary, MissingFileIsALoadError) {
  EXPECT_THROW(AliasDictionary::load("/nonexistent/dict.tsv"), LoadError);
}

TEST(AliasDictionary, ShippedLookups) {
  const auto& r = etdq::testing::shipped();
  EXPECT_EQ(r.universities.lookup("jhu"), (Match{MatchKind::Alias, "Johns Hopkins University"}));
  EXPECT_EQ(r.universities.lookup("JHU"), (Match{MatchKind::Alias, "Johns Hopkins University"}));
  EXPECT_EQ(r.degrees.lookup("MPHIL"), (Match{MatchKind::Alias, "Master of Philosophy"}));
  EXPECT_EQ(r.universities.lookup("Georgia Institute of Technology"),
            (Match{MatchKind::Canonical, "Georgia Institute of Technology"}));
  EXPECT_EQ(r.degrees.lookup("history").kind, MatchKind::NotFound);
}

TEST(AliasDictionary, AcronymAndVariantRows) {
  const auto& r = etdq::testing::shipped();
  for (const char* s : {"GEORGIA TECH", "GT", "GIT"}) {
    EXPECT_EQ(r.universities.lookup(s).canonical, "Georgia Institute of Technology") << s;
  }
  for (const char* s : {"MPHIL", "M PHIL", "PHM"}) {
    EXPECT_EQ(r.degrees.lookup(s).canonical, "Master of Philosophy") << s;
  }
  for (const char* s : {"MSE", "MSCE"}) {
    EXPECT_EQ(r.departments.lookup(s).canonical, "Materials Science and Engineering") << s;
  }
}

// Index key set = normalized canonicals and aliases, each owned by one entry.
TEST(AliasDictionary, ShippedIndexInvariants) {
  const auto& r = etdq::testing::shipped();
  for (const auto* d : {&r.universities, &r.degrees, &r.departments}) {
    std::set<std::string> keys;
    for (const auto& e : d->entries()) {
      EXPECT_EQ(d->lookup(e.canonical), (Match{MatchKind::Canonical, e.canonical}));
      keys.insert(d->key(e.canonical));
      for (const auto& a : e.aliases) {
        EXPECT_EQ(d->lookup(a).canonical, e.canonical) << a;
        keys.insert(d->key(a));
      }
    }
    EXPECT_EQ(keys.size(), d->key_count());
  }
}

TEST(WordFrequencies, LoadAndSum) {
  const auto w = WordFrequencyList::load(write_fixture("w.tsv", "music\t1000\nschool\t5\nmusic\t7\n"));
  EXPECT_EQ(w.count("music"), 1007u);
  EXPECT_EQ(w.count("school"), 5u);
  EXPECT_EQ(w.count("absent"), 0u);
}

TEST(WordFrequencies, Rejections) {
  EXPECT_THROW(WordFrequencyList::load(write_fixture("zero.tsv", "school\t0\n")), LoadError);
  EXPECT_THROW(WordFrequencyList::load(write_fixture("bad.tsv", "school\n")), LoadError);
  WordFrequencyList w;
  EXPECT_THROW(w.add("x", 0), std::invalid_argument);
}

TEST(WordFrequencies, VocabularyAddsUnknownTokensOnce) {
  WordFrequencyList w;
  w.add("music", 10);
  w.add_vocabulary({"Music Education", "Dept. of Music"});
  EXPECT_EQ(w.count("music"), 10u);
  EXPECT_EQ(w.count("education"), 1u);
  EXPECT_EQ(w.count("dept"), 1u);
}

TEST(Departments, KeyStripsBoilerplateAndSuffix) {
  EXPECT_EQ(department_key("Dept. of CS"), "CS");
  EXPECT_EQ(department_key("School of Music"), "MUSIC");
  EXPECT_EQ(department_key("Public Health (PMH)"), "PUBLIC HEALTH");
  EXPECT_EQ(department_key("Graduate Program in Computer Science"), "COMPUTER SCIENCE");
  EXPECT_EQ(strip_parenthesized_suffix(" Public Health (PMH) "), "Public Health");
  EXPECT_TRUE(is_department_boilerplate("DEPT"));
  EXPECT_FALSE(is_department_boilerplate("MUSIC"));
}

TEST(Departments, SameEntityForCommonVariants) {
  const auto& d = etdq::testing::shipped().departments;
  for (const char* s : {"Dept of CS", "CS Department", "Department of Computer Science", "Computer Science"}) {
    EXPECT_EQ(d.lookup(s).canonical, "Computer Science") << s;
  }
}

TEST(Departments, VocabularyIncludesDictionaryTokens) {
  const auto& sp = *etdq::testing::shipped().department_speller;
  EXPECT_TRUE(sp.known("school"));
  EXPECT_TRUE(sp.known("music"));
  EXPECT_TRUE(sp.known("dept"));
  EXPECT_TRUE(sp.known("musicology"));
}
