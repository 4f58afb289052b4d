#include "etdq/records_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr goes to <dir>/stderr.txt.
Run cli(const fs::path& dir, const std::string& args) {
  const auto cmd = "cd '" + dir.string() + "' && ETDQ_DATA='" + etdq::testing::data_dir().string() + "' '" +
                   std::string(ETDQ_CLI) + "' " + args + " 2>stderr.txt";
  Run r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  while (const auto n = std::fread(buf, 1, sizeof buf, p)) r.out.append(buf, n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) { return etdq::io::read_file(p); }

std::size_t lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string s; std::getline(in, s);) n += !s.empty();
  return n;
}

std::string bench(const std::string& name) { return (etdq::testing::benchmark_dir() / name).string(); }

// Value of a "key<TAB>value" line in the tab-separated tables the CLI prints.
std::string table_value(const std::string& out, const std::string& key, std::size_t column = 1) {
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, '\t');) cells.push_back(c);
    if (!cells.empty() && cells[0] == key && cells.size() > column) return cells[column];
  }
  return {};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = etdq::testing::scratch_dir(std::string("cli-") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, IngestCommitsVersionOnePerRecord) {
  const auto r = cli(dir_, "ingest --input " + bench("records.csv") + " --journal j.jsonl");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(table_value(r.out, "new_versions"), "500");
  EXPECT_EQ(lines(dir_ / "j.jsonl"), 500u);

  const auto again = cli(dir_, "ingest --input " + bench("records.csv") + " --journal j.jsonl");
  EXPECT_EQ(again.code, 0);
  EXPECT_EQ(table_value(again.out, "new_versions"), "0");
  EXPECT_EQ(lines(dir_ / "j.jsonl"), 500u);
}

TEST_F(Cli, HeaderOnlyInputSucceeds) {
  std::ofstream(dir_ / "empty.csv") << "id,title,author,advisor,university,year,degree,department\n";
  const auto r = cli(dir_, "ingest --input empty.csv --journal j.jsonl");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(table_value(r.out, "records"), "0");
}

TEST_F(Cli, BadRowsGivePartialExit) {
  std::ofstream(dir_ / "in.csv") << "id,title\nr1,Fine Title Here\n,No Id\n";
  const auto r = cli(dir_, "ingest --input in.csv --journal j.jsonl");
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(lines(dir_ / "j.jsonl"), 1u);
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("in.csv:3:"), std::string::npos);
}

TEST_F(Cli, ConfigAndResourceErrorsExitTwo) {
  EXPECT_EQ(cli(dir_, "detect --config absent.json --input " + bench("records.csv") + " --output d.jsonl").code, 2);
  std::ofstream(dir_ / "bad.json") << R"({"similarity_threshold": 3})";
  EXPECT_EQ(cli(dir_, "detect --config bad.json --input " + bench("records.csv") + " --output d.jsonl").code, 2);
  EXPECT_EQ(cli(dir_, "detect --input absent.csv --output d.jsonl").code, 2);
  EXPECT_EQ(cli(dir_, "fix --threshold 0 --input " + bench("records.csv") + " --output f.csv").code, 2);
  EXPECT_EQ(cli(dir_, "sample --criterion bogus:1 --input " + bench("records.csv") + " --output s.csv").code, 2);
  EXPECT_NE(cli(dir_, "frobnicate").code, 0);
}

TEST_F(Cli, SecondWriterGetsStoreBusy) {
  ASSERT_EQ(cli(dir_, "ingest --input " + bench("records.csv") + " --journal j.jsonl").code, 0);
  const int fd = ::open((dir_ / "j.jsonl.lock").c_str(), O_RDWR | O_CREAT, 0644);
  ASSERT_GE(fd, 0);
  ASSERT_EQ(::flock(fd, LOCK_EX | LOCK_NB), 0);
  const auto before = slurp(dir_ / "j.jsonl");
  EXPECT_EQ(cli(dir_, "rollback --id etd-0001 --to 1 --journal j.jsonl").code, 2);
  EXPECT_EQ(slurp(dir_ / "j.jsonl"), before);
  ::close(fd);
  // readers do not need the lock
  EXPECT_EQ(cli(dir_, "history --id etd-0001 --journal j.jsonl").code, 0);
}

TEST_F(Cli, DetectCountsMatchManifest) {
  const auto r = cli(dir_, "detect --input " + bench("records.csv") + " --output d.jsonl");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(table_value(r.out, "year", 1), "172");
  EXPECT_EQ(table_value(r.out, "department", 1), "269");
  EXPECT_EQ(table_value(r.out, "advisor", 4), "35");
  EXPECT_EQ(table_value(r.out, "university", 4), "43");
  EXPECT_GT(lines(dir_ / "d.jsonl"), 0u);
}

TEST_F(Cli, FixReportsUnresolvedAuthors) {
  const auto r = cli(dir_, "fix --input " + bench("records.csv") + " --oracle " + bench("oracle_partial.jsonl") +
                               " --output f.csv");
  ASSERT_EQ(r.code, 0);
  // the second "author" row is the unresolved table
  const auto first = r.out.find("\nauthor\t");
  ASSERT_NE(first, std::string::npos);
  EXPECT_EQ(table_value(r.out.substr(r.out.find("\nauthor\t", first + 1)), "author"), "2");
  EXPECT_NE(slurp(dir_ / "stderr.txt").find("author"), std::string::npos);

  const auto full = cli(dir_, "fix --input " + bench("records.csv") + " --oracle " + bench("oracle.jsonl") +
                                  " --output g.csv");
  ASSERT_EQ(full.code, 0);
  const auto second = full.out.find("\nauthor\t", full.out.find("\nauthor\t") + 1);
  EXPECT_EQ(table_value(full.out.substr(second), "author"), "0");
  EXPECT_EQ(table_value(full.out, "department", 4), "85");
}

TEST_F(Cli, HistoryDiffRollback) {
  const auto in = bench("records.csv");
  const auto oracle = bench("oracle_partial.jsonl");
  ASSERT_EQ(cli(dir_, "ingest --input " + in + " --journal j.jsonl").code, 0);
  const auto fixed = cli(dir_, "fix --input " + in + " --oracle " + oracle + " --journal j.jsonl --output f.csv");
  ASSERT_EQ(fixed.code, 0);

  // first record whose only change is a university canonicalization
  std::string id;
  {
    std::ifstream a(dir_ / "f.csv.actions.jsonl");
    std::map<std::string, std::vector<std::string>> per;
    std::vector<std::string> order;
    for (std::string line; std::getline(a, line);) {
      const auto rid = line.substr(14, line.find('"', 14) - 14);
      if (!per.contains(rid)) order.push_back(rid);
      per[rid].push_back(line);
    }
    for (const auto& rid : order) {
      if (per[rid].size() == 1 && per[rid][0].find("\"field\":\"university\",\"kind\":\"Canonicalize\"") !=
                                      std::string::npos) {
        id = rid;
        break;
      }
    }
  }
  ASSERT_FALSE(id.empty());

  const auto d12 = cli(dir_, "diff --id " + id + " --from 1 --to 2 --journal j.jsonl");
  ASSERT_EQ(d12.code, 0);
  EXPECT_EQ(std::count(d12.out.begin(), d12.out.end(), '\n'), 1);
  EXPECT_EQ(d12.out.rfind("university\t", 0), 0u);

  ASSERT_EQ(cli(dir_, "rollback --id " + id + " --to 1 --journal j.jsonl").code, 0);
  const auto d13 = cli(dir_, "diff --id " + id + " --from 1 --to 3 --journal j.jsonl");
  EXPECT_EQ(d13.code, 0);
  EXPECT_EQ(d13.out, "");
  const auto h = cli(dir_, "history --id " + id + " --journal j.jsonl");
  EXPECT_EQ(std::count(h.out.begin(), h.out.end(), '\n'), 3);
  EXPECT_NE(h.out.find("Rollback"), std::string::npos);

  EXPECT_EQ(cli(dir_, "history --id no-such-id --journal j.jsonl").code, 1);
  EXPECT_EQ(cli(dir_, "rollback --id " + id + " --to 9 --journal j.jsonl").code, 1);

  // the journal is append-only: re-running fix re-applies the rolled-back change as version 4
  const auto again = cli(dir_, "fix --input " + in + " --oracle " + oracle + " --journal j.jsonl --output f2.csv");
  EXPECT_EQ(table_value(again.out, "new_versions"), "1");
  const auto third = cli(dir_, "fix --input " + in + " --oracle " + oracle + " --journal j.jsonl --output f3.csv");
  EXPECT_EQ(table_value(third.out, "new_versions"), "0");
}

TEST_F(Cli, EvaluateFromFixOutputs) {
  ASSERT_EQ(cli(dir_, "fix --input " + bench("records.csv") + " --oracle " + bench("oracle.jsonl") +
                          " --output f.csv")
                .code,
            0);
  // with saved predictions, --input is the corrected output of that run
  const auto r = cli(dir_, "evaluate --input f.csv --gold " + bench("gold.csv") +
                               " --diagnoses f.csv.diagnoses.jsonl --actions f.csv.actions.jsonl --output report");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("department    1.000  1.000  1.000  1.000  1.000  1.000"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "report.json"));
  EXPECT_EQ(slurp(dir_ / "report.txt"), r.out);
}

TEST_F(Cli, OutputsAreByteIdenticalAcrossRuns) {
  std::ofstream(dir_ / "noise.json") << R"({"fields": {"year": {"drop": 0.2}, "department": {"typo": 0.1, "acronymize": 0.1}, "title": {"wrong_value": 0.05}}})";
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"detect --input " + bench("records.csv") + " --output OUT.jsonl --jobs 4", {"OUT.jsonl"}},
      {"fix --input " + bench("records.csv") + " --oracle " + bench("oracle_partial.jsonl") + " --output OUT.csv --jobs 4",
       {"OUT.csv", "OUT.csv.diagnoses.jsonl", "OUT.csv.actions.jsonl"}},
      {"inject --input " + bench("clean.csv") + " --noise noise.json --seed 11 --output OUT.csv",
       {"OUT.csv", "OUT.csv.gold.csv", "OUT.csv.manifest.json"}},
      {"sample --input " + bench("records.csv") +
           " --criterion random:100 --criterion university:10:10 --criterion degree:5:20 --seed 3 --output OUT.csv",
       {"OUT.csv", "OUT.csv.manifest.json"}},
  };
  for (const auto& [args, files] : commands) {
    std::vector<std::string> runs[2];
    std::string stdout_text[2];
    for (int k = 0; k < 2; ++k) {
      const auto sub = dir_ / ("run" + std::to_string(k));
      fs::create_directories(sub);
      fs::copy_file(dir_ / "noise.json", sub / "noise.json", fs::copy_options::overwrite_existing);
      const auto r = cli(sub, args);
      ASSERT_EQ(r.code, 0) << args;
      stdout_text[k] = r.out;
      for (const auto& f : files) runs[k].push_back(slurp(sub / f));
    }
    EXPECT_EQ(stdout_text[0], stdout_text[1]) << args;
    for (std::size_t i = 0; i < files.size(); ++i) EXPECT_EQ(runs[0][i], runs[1][i]) << args << " " << files[i];
    fs::remove_all(dir_ / "run0");
    fs::remove_all(dir_ / "run1");
  }
}

TEST_F(Cli, SerialAndParallelFixAgree) {
  const auto base = "fix --input " + bench("records.csv") + " --oracle " + bench("oracle.jsonl");
  ASSERT_EQ(cli(dir_, base + " --jobs 1 --output a.csv").code, 0);
  ASSERT_EQ(cli(dir_, base + " --jobs 4 --output b.csv").code, 0);
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  EXPECT_EQ(slurp(dir_ / "a.csv.actions.jsonl"), slurp(dir_ / "b.csv.actions.jsonl"));
}
