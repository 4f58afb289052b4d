#include "etdq/records_io.hpp"
#include "etdq/synth.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <map>
#include <set>

using namespace etdq;

namespace {

const Resources& res() { return etdq::testing::shipped(); }

const synth::Benchmark& bench() {
  static const auto b = synth::build_benchmark({}, res());
  return b;
}

std::string shipped_file(const std::string& name) { return io::read_file(etdq::testing::benchmark_dir() / name); }

}  // namespace

TEST(Synth, BenchmarkIsDeterministic) {
  const auto again = synth::build_benchmark({}, res());
  EXPECT_EQ(again.records, bench().records);
  EXPECT_EQ(again.clean, bench().clean);
  EXPECT_EQ(format_gold(again.gold), format_gold(bench().gold));
  EXPECT_EQ(synth::format_oracle(again.oracle), synth::format_oracle(bench().oracle));

  synth::BenchmarkSpec other;
  other.seed = 99;
  EXPECT_NE(synth::build_benchmark(other, res()).records, bench().records);
}

TEST(Synth, ShippedFilesMatchGenerator) {
  const auto& b = bench();
  EXPECT_EQ(shipped_file("records.csv"), io::format_records(b.records, io::Format::Csv));
  EXPECT_EQ(shipped_file("clean.csv"), io::format_records(b.clean, io::Format::Csv));
  EXPECT_EQ(shipped_file("gold.csv"), format_gold(b.gold));
  EXPECT_EQ(shipped_file("oracle.jsonl"), synth::format_oracle(b.oracle));
  EXPECT_EQ(shipped_file("oracle_partial.jsonl"), synth::format_oracle(b.oracle_partial));
  EXPECT_EQ(nlohmann::json::parse(shipped_file("manifest.json")), nlohmann::json::parse(b.manifest_json()));
}

TEST(Synth, MissingCountsAndUniqueIds) {
  const auto& b = bench();
  ASSERT_EQ(b.records.size(), 500u);
  std::set<std::string> ids;
  std::array<std::size_t, kFieldCount> missing{};
  for (const auto& r : b.records) {
    ids.insert(r.id());
    for (const auto f : kAllFields) missing[index_of(f)] += is_missing(r.field(f));
  }
  EXPECT_EQ(ids.size(), 500u);
  EXPECT_EQ(missing, b.spec.missing);
}

TEST(Synth, UniversitiesUsed) {
  std::set<std::string> unis;
  for (const auto& r : bench().clean) unis.insert(*r.raw(FieldKey::University));
  EXPECT_EQ(unis.size(), bench().spec.universities_used);
}

TEST(Synth, GoldCoversEveryCell) {
  const auto& b = bench();
  EXPECT_EQ(b.gold.size(), b.records.size() * kFieldCount);
  std::map<std::pair<std::string, FieldKey>, int> seen;
  for (const auto& g : b.gold) ++seen[{g.record_id, g.field}];
  EXPECT_EQ(seen.size(), b.gold.size());
}

TEST(Synth, PartialOracleLacksOnlyUnextractableAuthors) {
  const auto& b = bench();
  ASSERT_EQ(b.oracle.size(), b.oracle_partial.size());
  std::size_t differences = 0;
  for (std::size_t i = 0; i < b.oracle.size(); ++i) {
    for (const auto f : kAllFields) {
      if (b.oracle[i].fields[index_of(f)] == b.oracle_partial[i].fields[index_of(f)]) continue;
      ++differences;
      EXPECT_EQ(f, FieldKey::Author);
      EXPECT_FALSE(b.oracle_partial[i].fields[index_of(f)].has_value());
    }
  }
  EXPECT_EQ(differences, b.spec.authors_not_extractable);
}

TEST(Synth, ExpectedCanonicalCounts) {
  EXPECT_EQ(synth::BenchmarkSpec{}.expected_canonical(),
            (std::array<std::size_t, kFieldCount>{0, 0, 35, 43, 1, 82, 85}));
}
