#include "etdq/config.hpp"
#include "etdq/errors.hpp"
#include "etdq/records_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <random>

using namespace etdq;
using namespace etdq::io;

namespace {

constexpr const char* kHeader = "id,title,author,advisor,university,year,degree,department\n";

void write(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

}  // namespace

TEST(Csv, QuotedCellsAndLineEndings) {
  const auto rows = parse_csv("a,b,c\r\n\"x, y\",\"he said \"\"hi\"\"\",\"two\nlines\"\nlast,,\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].cells, (std::vector<std::string>{"x, y", "he said \"hi\"", "two\nlines"}));
  EXPECT_EQ(rows[1].line, 2u);
  EXPECT_EQ(rows[2].line, 4u);
  EXPECT_EQ(rows[2].cells, (std::vector<std::string>{"last", "", ""}));
}

TEST(Csv, UnterminatedQuoteThrows) { EXPECT_THROW(parse_csv("a,b\n\"open,1\n"), ParseError); }

TEST(Csv, CellRoundTrip) {
  std::mt19937_64 rng(3);
  const std::string alphabet = "ab ,\"\n\r\tz";
  for (int i = 0; i < 300; ++i) {
    std::vector<std::string> cells(1 + rng() % 4);
    for (auto& c : cells) {
      const auto len = rng() % 8;
      for (std::size_t k = 0; k < len; ++k) c.push_back(alphabet[rng() % alphabet.size()]);
    }
    // a lone empty cell is indistinguishable from a blank line
    if (cells.size() == 1 && cells[0].empty()) cells[0] = "x";
    const auto rows = parse_csv(csv_line(cells));
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].cells, cells);
  }
}

TEST(Records, HeaderOnlyIsEmpty) {
  const auto res = parse_records(kHeader, Format::Csv);
  EXPECT_TRUE(res.records.empty());
  EXPECT_TRUE(res.issues.empty());
  EXPECT_TRUE(parse_records("", Format::Csv).records.empty());
}

TEST(Records, SkipsBadRowsWithLineNumbers) {
  const std::string csv = std::string(kHeader) +
                          "e1,A Title,Ann Lee,,MIT,2001,PhD,Physics\n"
                          ",No Id,Bob,,,,,\n"
                          "e1,Dup,Bob,,,,,\n"
                          "e2,short row\n"
                          "e3,\"Quoted, title\",,,,,,\n";
  const auto res = parse_records(csv, Format::Csv);
  ASSERT_EQ(res.records.size(), 2u);
  EXPECT_EQ(res.records[0].id(), "e1");
  EXPECT_EQ(res.records[1].raw(FieldKey::Title), "Quoted, title");
  EXPECT_FALSE(res.records[1].raw(FieldKey::Author).has_value());
  ASSERT_EQ(res.issues.size(), 3u);
  EXPECT_EQ(res.issues[0].line, 3u);
  EXPECT_EQ(res.issues[1].line, 4u);
  EXPECT_NE(res.issues[1].message.find("duplicate"), std::string::npos);
  EXPECT_EQ(res.issues[2].line, 5u);
}

TEST(Records, MissingIdColumnThrows) {
  EXPECT_THROW(parse_records("title,author\nx,y\n", Format::Csv), ParseError);
}

TEST(Records, AbsentColumnsAreMissing) {
  const auto res = parse_records("ID,Title\nr1,Hello\n", Format::Csv);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].raw(FieldKey::Title), "Hello");
  for (const auto f : kAllFields) {
    if (f != FieldKey::Title) EXPECT_FALSE(res.records[0].raw(f).has_value());
  }
}

TEST(Records, Jsonl) {
  const std::string data =
      "{\"id\":\"a\",\"fields\":{\"title\":\"T\",\"year\":null,\"bogus\":\"x\"}}\n"
      "\n"
      "{\"fields\":{}}\n"
      "not json\n"
      "{\"id\":\"b\",\"fields\":{\"author\":7}}\n"
      "{\"id\":\"a\"}\n";
  const auto res = parse_records(data, Format::Jsonl);
  ASSERT_EQ(res.records.size(), 1u);
  EXPECT_EQ(res.records[0].raw(FieldKey::Title), "T");
  ASSERT_EQ(res.issues.size(), 4u);
  EXPECT_EQ(res.issues[0].line, 3u);
  EXPECT_EQ(res.issues[1].line, 4u);
  EXPECT_EQ(res.issues[2].line, 5u);
  EXPECT_EQ(res.issues[3].line, 6u);
}

TEST(Records, FormatRoundTrip) {
  const auto original = read_records(etdq::testing::benchmark_dir() / "records.csv", Format::Csv);
  ASSERT_EQ(original.records.size(), 500u);
  EXPECT_TRUE(original.issues.empty());
  for (const auto fmt : {Format::Csv, Format::Jsonl}) {
    const auto back = parse_records(format_records(original.records, fmt), fmt);
    EXPECT_TRUE(back.issues.empty());
    EXPECT_EQ(back.records, original.records);
  }
}

TEST(Records, StructuredColumns) {
  EtdRecord r("x");
  r.set_raw(FieldKey::Advisor, "Jane Roe");
  r.field(FieldKey::Advisor).role = "Co-Chair";
  r.set_raw(FieldKey::Year, "2015-05-10");
  r.field(FieldKey::Year).parts = DateParts{2015, 5, 10};
  const auto csv = format_records({r}, Format::Csv, true);
  const auto rows = parse_csv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].cells.back(), "date_day");
  EXPECT_EQ(rows[1].cells[8], "Co-Chair");
  EXPECT_EQ(rows[1].cells[9], "2015");
  EXPECT_EQ(rows[1].cells[10], "5");
  EXPECT_EQ(rows[1].cells[11], "10");

  const auto j = nlohmann::json::parse(format_records({r}, Format::Jsonl, true));
  EXPECT_EQ(j["advisor_role"], "Co-Chair");
  EXPECT_EQ(j["date"]["month"], 5);
  EXPECT_TRUE(j["fields"]["title"].is_null());
}

TEST(Records, FormatNames) {
  EXPECT_EQ(parse_format("csv"), Format::Csv);
  EXPECT_EQ(parse_format("ndjson"), Format::Jsonl);
  EXPECT_THROW(parse_format("xml"), ConfigError);
  EXPECT_EQ(guess_format("a/b.jsonl"), Format::Jsonl);
  EXPECT_EQ(guess_format("a/b.txt"), Format::Csv);
}

TEST(Files, AtomicWriteReplaces) {
  const auto dir = etdq::testing::scratch_dir("atomic");
  const auto p = dir / "out.txt";
  write_file_atomic(p, "first");
  write_file_atomic(p, "second\n");
  EXPECT_EQ(read_file(p), "second\n");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  EXPECT_EQ(entries, 1u);
  EXPECT_THROW(read_file(dir / "absent"), LoadError);
  std::filesystem::remove_all(dir);
}

TEST(Config, DefaultsValidate) {
  const auto cfg = PipelineConfig::defaults(etdq::testing::data_dir());
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_DOUBLE_EQ(cfg.similarity_threshold, 0.90);
}

TEST(Config, ShippedFileMatchesDefaults) {
  const auto base = PipelineConfig::defaults(etdq::testing::data_dir());
  const auto cfg = PipelineConfig::load(etdq::testing::data_dir() / "config.json", PipelineConfig{});
  EXPECT_EQ(std::filesystem::weakly_canonical(cfg.universities), std::filesystem::weakly_canonical(base.universities));
  EXPECT_EQ(cfg.years.min_year, 1880);
  EXPECT_EQ(cfg.years.max_year, 2023);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, RelativePathsAndOverrides) {
  const auto dir = etdq::testing::scratch_dir("config");
  write(dir / "c.json", R"({"words": "w.txt", "similarity_threshold": 0.8, "oracle": null})");
  const auto base = PipelineConfig::defaults(etdq::testing::data_dir());
  const auto cfg = PipelineConfig::load(dir / "c.json", base);
  EXPECT_EQ(cfg.words, dir / "w.txt");
  EXPECT_DOUBLE_EQ(cfg.similarity_threshold, 0.8);
  EXPECT_EQ(cfg.degrees, base.degrees);
  EXPECT_THROW(cfg.validate(), ConfigError);  // w.txt does not exist
  std::filesystem::remove_all(dir);
}

TEST(Config, Rejections) {
  const auto dir = etdq::testing::scratch_dir("config-bad");
  const auto base = PipelineConfig::defaults(etdq::testing::data_dir());
  const auto expect_bad = [&](const std::string& body) {
    write(dir / "c.json", body);
    EXPECT_THROW(PipelineConfig::load(dir / "c.json", base), ConfigError) << body;
  };
  expect_bad(R"({"surprise": 1})");
  expect_bad(R"({"year_range": [1880]})");
  expect_bad(R"({"date_order": "sideways"})");
  expect_bad(R"({"similarity_threshold": "high"})");
  expect_bad("[1, 2]");
  expect_bad("{not json");
  EXPECT_THROW(PipelineConfig::load(dir / "absent.json", base), ConfigError);

  auto cfg = base;
  cfg.similarity_threshold = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = base;
  cfg.years = {2000, 1990};
  EXPECT_THROW(cfg.validate(), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, LoadResourcesWrapsFailures) {
  auto cfg = PipelineConfig::defaults(etdq::testing::data_dir());
  cfg.title_model = "/nonexistent/model.json";
  EXPECT_THROW(load_resources(cfg), ConfigError);
}
