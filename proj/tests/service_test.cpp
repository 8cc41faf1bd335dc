#include <gtest/gtest.h>

#include <cstdlib>
#include <thread>

#include "bnread/json_io.hpp"
#include "bnread/service.hpp"
#include "test_support.hpp"

// After the project headers: <resolv.h> defines a _res macro that collides with Eigen.
#include <httplib.h>

using namespace bnread;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = testkit::source_path("tests/data/service");
const char* const kDocuments[] = {"doc_short", "doc_mixed", "doc_long"};

Lexicons fixture_lexicons() {
  Lexicons lex;
  lex.syllables = SyllableDict::load(kFixtures / "dict.tsv");
  lex.easy_words = WordSet::load(kFixtures / "easy.txt", WordListRole::EasyWords);
  return lex;
}

std::shared_ptr<const NGramModel> fixture_model() {
  static const auto model = std::make_shared<const NGramModel>(NGramModel::load(kFixtures / "model.bin"));
  return model;
}

std::unique_ptr<ReadabilityService> make_service(bool with_model, ServiceOptions options = {}) {
  auto svc = std::make_unique<ReadabilityService>(fixture_lexicons(), ReadabilityConfig::defaults(), options);
  if (with_model) svc->set_model(fixture_model());
  return svc;
}

std::string text_body(const std::string& text) { return json::Json{{"text", text}}.dump(); }

json::Json parse(const std::string& s) { return json::Json::parse(s); }

}  // namespace

TEST(ServiceHandlers, AnalyzeRejectsBadBodies) {
  auto svc = make_service(true);
  EXPECT_EQ(svc->analyze("not json").status, 400);
  EXPECT_EQ(svc->analyze("[1,2]").status, 400);
  EXPECT_EQ(svc->analyze(R"({"text": 5})").status, 400);
  EXPECT_EQ(svc->analyze(R"({"body": "x"})").status, 400);
  EXPECT_EQ(svc->analyze(text_body("")).status, 400);
  EXPECT_EQ(svc->analyze(text_body("  \xE0\xA5\xA4  ")).status, 400);
  const HttpReply r = svc->analyze("{");
  EXPECT_TRUE(parse(r.body).contains("error"));
}

TEST(ServiceHandlers, BodyLimit) {
  ServiceOptions small;
  small.max_body_bytes = 64;
  auto svc = make_service(true, small);
  EXPECT_EQ(svc->analyze(text_body(std::string(100, 'a'))).status, 413);
  EXPECT_EQ(svc->predict(std::string(65, ' ')).status, 413);
  EXPECT_EQ(svc->analyze(text_body("\xE0\xA6\x95\xE0\xA6\xBE")).status, 200);
}

TEST(ServiceHandlers, NoModel) {
  auto svc = make_service(false);
  EXPECT_EQ(svc->analyze(text_body("\xE0\xA6\x95\xE0\xA6\xBE")).status, 503);
  EXPECT_EQ(svc->predict(R"({"sentences": ["x"]})").status, 503);
  const HttpReply h = svc->health();
  EXPECT_EQ(h.status, 503);
  EXPECT_TRUE(parse(h.body)["model_version"].is_null());
}

TEST(ServiceHandlers, HealthReportsModelFingerprint) {
  auto svc = make_service(true);
  const HttpReply h = svc->health();
  EXPECT_EQ(h.status, 200);
  const auto j = parse(h.body);
  EXPECT_EQ(j["status"], "ok");
  EXPECT_EQ(j["model_version"], fixture_model()->fingerprint());
}

TEST(ServiceHandlers, PredictMatchesModel) {
  auto svc = make_service(true);
  EXPECT_EQ(svc->predict(R"({"sentences": "x"})").status, 400);
  EXPECT_EQ(svc->predict(R"({"sentences": ["x", 3]})").status, 400);
  const std::string a = "\xE0\xA6\xB8\xE0\xA6\xB9\xE0\xA6\x9C \xE0\xA6\x95\xE0\xA6\xBE";
  const HttpReply r = svc->predict(json::Json{{"sentences", {a, "b"}}}.dump());
  ASSERT_EQ(r.status, 200);
  const auto preds = parse(r.body)["predictions"];
  ASSERT_EQ(preds.size(), 2u);
  const Prediction p = fixture_model()->predict(a);
  EXPECT_EQ(preds[0]["text"], a);
  EXPECT_EQ(preds[0]["label"], label_name(p.label));
  EXPECT_DOUBLE_EQ(preds[0]["probabilities"]["simple"].get<double>(), p.probability[0]);
}

TEST(ServiceHandlers, ModelSwapChangesVersion) {
  auto svc = make_service(false);
  svc->set_model(fixture_model());
  EXPECT_EQ(svc->health().status, 200);
  svc->set_model(nullptr);
  EXPECT_EQ(svc->health().status, 503);
}

// Golden files pin the exact response bytes. Set BNREAD_UPDATE_GOLDEN=1 to
// rewrite them after an intentional output change.
TEST(ServiceGolden, AnalyzeFixtureDocuments) {
  auto svc = make_service(true);
  const bool update = std::getenv("BNREAD_UPDATE_GOLDEN") != nullptr;
  for (const char* name : kDocuments) {
    const std::string doc = testkit::read_text(kFixtures / (std::string(name) + ".txt"));
    const HttpReply r = svc->analyze(text_body(doc));
    ASSERT_EQ(r.status, 200) << name;
    const fs::path golden = kFixtures / "golden" / (std::string(name) + ".json");
    if (update) testkit::write_text(golden, r.body);
    EXPECT_EQ(r.body, testkit::read_text(golden)) << name;
  }
}

TEST(ServiceGolden, CliAnalyzeIsByteIdentical) {
  auto svc = make_service(true);
  for (const char* name : kDocuments) {
    const fs::path doc = kFixtures / (std::string(name) + ".txt");
    const std::string cmd = testkit::shell_quote(testkit::cli_path()) + " analyze " +
                            testkit::shell_quote((kFixtures / "model.bin").string()) + " " +
                            testkit::shell_quote(doc.string()) + " --dict " +
                            testkit::shell_quote((kFixtures / "dict.tsv").string()) + " --easy " +
                            testkit::shell_quote((kFixtures / "easy.txt").string());
    const auto result = testkit::run_command(cmd);
    ASSERT_EQ(result.exit_code, 0) << name;
    EXPECT_EQ(result.out, svc->analyze(text_body(testkit::read_text(doc))).body) << name;
  }
}

TEST(ServiceHttp, RoutesOverLoopback) {
  auto svc = make_service(true);
  const int port = svc->bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread server([&] { svc->listen_after_bind(); });
  svc->wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  const std::string doc = testkit::read_text(kFixtures / "doc_mixed.txt");
  auto res = client.Post("/api/analyze", text_body(doc), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, svc->analyze(text_body(doc)).body);
  EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");

  auto health = client.Get("/api/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  auto bad = client.Post("/api/analyze", "{", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);

  auto missing = client.Get("/api/nothing");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  EXPECT_TRUE(parse(missing->body).contains("error"));

  svc->stop();
  server.join();
}

namespace {

int cli_exit(const std::string& args) {
  return testkit::run_command(testkit::shell_quote(testkit::cli_path()) + " " + args).exit_code;
}

}  // namespace

TEST(CliExitCodes, Conventions) {
  const fs::path dir = testkit::scratch_dir("cli_exit");
  const fs::path empty = dir / "empty.txt";
  const fs::path bad_model = dir / "bad.bin";
  testkit::write_text(empty, "");
  testkit::write_text(bad_model, "BNRDNGM");
  const std::string doc = testkit::shell_quote((kFixtures / "doc_short.txt").string());

  EXPECT_EQ(cli_exit("cc \xE0\xA6\x95\xE0\xA7\x8D\xE0\xA6\xA4"), 0);
  EXPECT_EQ(testkit::run_command(testkit::shell_quote(testkit::cli_path()) + " cc \xE0\xA6\x95\xE0\xA7\x8D\xE0\xA6\xA4").out,
            "1\n");
  EXPECT_EQ(cli_exit(""), 1);
  EXPECT_EQ(cli_exit("no-such-command"), 1);
  EXPECT_EQ(cli_exit("--help"), 0);
  EXPECT_EQ(cli_exit("score " + testkit::shell_quote(empty.string())), 2);
  EXPECT_EQ(cli_exit("analyze " + testkit::shell_quote(bad_model.string()) + " " + doc), 3);
  EXPECT_EQ(cli_exit("score " + doc), 0);
}
