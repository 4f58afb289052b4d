#include "etdq/detection.hpp"
#include "etdq/errors.hpp"
#include "etdq/names.hpp"
#include "etdq/rng.hpp"
#include "etdq/synth.hpp"

#include <httplib.h>
#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <thread>

using namespace etdq;

TEST(Contributor, KnownExamples) {
  auto c = parse_contributor("Mark Pankow, Co-Chair");
  EXPECT_EQ(c.name, "Mark Pankow");
  EXPECT_EQ(c.role, "Co-Chair");
  c = parse_contributor("Andrew Mathew Jr., Committee Member");
  EXPECT_EQ(c.name, "Andrew Mathew Jr.");
  EXPECT_EQ(c.role, "Committee Member");
  c = parse_contributor("Jane Doe");
  EXPECT_EQ(c.name, "Jane Doe");
  EXPECT_FALSE(c.role);
}

TEST(Contributor, SuffixMustBeARole) {
  const auto c = parse_contributor("Doe, Jane");
  EXPECT_EQ(c.name, "Doe, Jane");
  EXPECT_FALSE(c.role);
  EXPECT_TRUE(is_role("co-chair"));
  EXPECT_TRUE(is_role("Committee Member"));
  EXPECT_FALSE(is_role("Professor Emeritus"));
}

TEST(Contributor, ReassembleIsTheTrimmedInput) {
  for (const char* s : {"Mark Pankow, Co-Chair", "Andrew Mathew Jr.,Committee Member", "Jane Doe", "Lee ,  Advisor"}) {
    EXPECT_EQ(parse_contributor(s).reassemble(), s);
  }
}

TEST(RuleJudge, TokenLabels) {
  EXPECT_EQ(RuleNameJudge::label_token("123"), NameLabel::Other);
  EXPECT_EQ(RuleNameJudge::label_token("Co-Chair"), NameLabel::Other);
  EXPECT_EQ(RuleNameJudge::label_token("Jr."), NameLabel::Person);
  EXPECT_EQ(RuleNameJudge::label_token("J.R."), NameLabel::Person);
  EXPECT_EQ(RuleNameJudge::label_token("NASA"), NameLabel::Other);
  EXPECT_EQ(RuleNameJudge::label_token("van"), NameLabel::Person);
  EXPECT_EQ(RuleNameJudge::label_token("the"), NameLabel::Other);
  EXPECT_EQ(RuleNameJudge::label_token("O'Brien"), NameLabel::Person);
}

TEST(RuleJudge, RoleSuffixExampleIsFlagged) {
  const RuleNameJudge judge;
  const auto j = judge.judge("Mark Pankow, Co-Chair");
  EXPECT_FALSE(j.all_person());
  EXPECT_EQ(j.reconstruct(), "Mark Pankow, Co-Chair");
  const auto d = detect_person_name(FieldKey::Author, "Mark Pankow, Co-Chair", judge);
  ASSERT_TRUE(d);
  EXPECT_EQ(d->kind, ErrorKind::IncorrectValue);
  ASSERT_EQ(d->spans.size(), 1u);
  EXPECT_EQ(d->spans[0], (Span{13, 21}));
}

TEST(RuleJudge, FiftyGeneratedNamesAreClean) {
  const RuleNameJudge judge;
  Rng rng(50);
  int flagged = 0;
  for (int i = 0; i < 50; ++i) {
    const auto name = synth::person_name(rng, i % 2 == 0);
    if (detect_person_name(FieldKey::Author, name, judge)) {
      ++flagged;
      ADD_FAILURE() << name;
    }
  }
  EXPECT_EQ(flagged, 0);
  EXPECT_FALSE(detect_person_name(FieldKey::Author, "Jane Doe", judge));
}

TEST(Advisor, RoleSuffixIsNonCanonicalAndBadNameIsIncorrect) {
  const RuleNameJudge judge;
  EXPECT_EQ(detect_advisor("Mark Pankow, Co-Chair", judge)->kind, ErrorKind::NonCanonical);
  EXPECT_EQ(detect_advisor("Andrew Mathew Jr., Committee Member", judge)->kind, ErrorKind::NonCanonical);
  EXPECT_FALSE(detect_advisor("Andrew Mathew Jr.", judge));
  EXPECT_EQ(detect_advisor("Thesis 2015, Chair", judge)->kind, ErrorKind::IncorrectValue);
}

class RemoteJudgeTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server.Post("/judge", [](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      nlohmann::json tokens = nlohmann::json::array();
      std::istringstream in(body.at("text").get<std::string>());
      std::string tok;
      while (in >> tok) tokens.push_back({{"token", tok}, {"label", tok == "Co-Chair" ? "ROLE" : "PERSON"}});
      res.set_content(nlohmann::json{{"tokens", tokens}}.dump(), "application/json");
    });
    server.Post("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("not json", "application/json");
    });
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  void TearDown() override {
    server.stop();
    thread.join();
  }
  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port) + path; }
  httplib::Server server;
  std::thread thread;
  int port = 0;
};

TEST_F(RemoteJudgeTest, LabelsComeFromTheService) {
  const RemoteNameJudge judge(url("/judge"));
  const auto j = judge.judge("Mark Pankow, Co-Chair");
  ASSERT_EQ(j.tokens.size(), 3u);
  EXPECT_EQ(j.tokens[2].label, NameLabel::Other);
  EXPECT_EQ(j.tokens[2].offset, 13u);
  EXPECT_TRUE(judge.judge("Jane Doe").all_person());
}

TEST_F(RemoteJudgeTest, FailuresAreProviderErrors) {
  EXPECT_THROW(RemoteNameJudge(url("/broken")).judge("Jane Doe"), ProviderError);
  EXPECT_THROW(RemoteNameJudge(url("/missing")).judge("Jane Doe"), ProviderError);
  EXPECT_THROW(RemoteNameJudge("http://127.0.0.1:1/judge", std::chrono::milliseconds(200)).judge("Jane"),
               ProviderError);
}
