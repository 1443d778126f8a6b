#include <gtest/gtest.h>

#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "kgmm/service/service.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kgmm;
using nlohmann::json;
namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("kgmm-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

service::EngineConfig level3_config() {
  return service::load_engine_config(oracle::fixture_path("level3.config.json"));
}

service::TransportFactory level3_transport() {
  std::string script = oracle::read_file(oracle::fixture_path("level3.http.json"));
  return [script] { return probes::ScriptedTransport::from_json_text(script); };
}

json level3_reviews() { return json::parse(oracle::read_file(oracle::fixture_path("level3.reviews.json"))); }

// --- store ---------------------------------------------------------------------

TEST(Store, ReplaysAfterReopen) {
  TempDir dir;
  std::string token;
  {
    service::Store store(dir.path);
    token = store.add_account("alice", "Alice", service::Role::Author);
    store.add_account("bob", "Bob", service::Role::Reviewer);
    store.add_target({"kg1", "Graph", "default", "/tmp/x.nt", "alice", "2024-01-01T00:00:00Z"});
    store.submit_review({"bob", "kg1", {{"correctness", true}}, {}, "2024-01-02T00:00:00Z"},
                        review::default_questions());
    store.set_policy({"bio", 4, 0.6});
    auto id = store.begin_assessment("kg1", json{{"k", 1}});
    store.finish_assessment(id, json::array({1, 2}), "{\"achieved_level\": 2}\n");
    auto failed = store.begin_assessment("kg1", json::object());
    store.fail_assessment(failed, "boom");
  }
  service::Store reopened(dir.path);
  EXPECT_EQ(reopened.account_by_token(token)->id, "alice");
  EXPECT_EQ(reopened.account("alice")->token_hash, service::sha256_hex(token));
  EXPECT_EQ(reopened.target("kg1")->author, "alice");
  EXPECT_EQ(reopened.reviews().reviews_for("kg1").size(), 1u);
  EXPECT_EQ(reopened.policy("bio").min_reviews, 4);
  EXPECT_EQ(reopened.assessments_for("kg1"), (std::vector<std::string>{"a-1", "a-2"}));
  auto rec = reopened.assessment("a-1");
  EXPECT_EQ(rec->state, service::AssessmentState::Finished);
  EXPECT_EQ(rec->report, "{\"achieved_level\": 2}\n");
  EXPECT_EQ(reopened.assessment("a-2")->error, "boom");
  // New ids continue after the replayed ones.
  EXPECT_EQ(reopened.begin_assessment("kg1", json::object()), "a-3");
}

TEST(Store, Conflicts) {
  TempDir dir;
  service::Store store(dir.path);
  store.add_account("alice", "Alice", service::Role::Author);
  store.add_target({"kg1", "", "default", "x.nt", "alice", ""});
  try {
    store.add_target({"kg1", "", "default", "y.nt", "alice", ""});
    FAIL();
  } catch (const service::StoreError& e) {
    EXPECT_EQ(e.kind(), service::StoreError::Kind::Conflict);
  }
  auto id = store.begin_assessment("kg1", json::object());
  store.finish_assessment(id, json::array(), "{\"achieved_level\": 0}");
  EXPECT_THROW(store.finish_assessment(id, json::array(), "{\"achieved_level\": 0}"), service::StoreError);
  EXPECT_THROW(store.begin_assessment("nope", json::object()), service::StoreError);
}

TEST(Store, CompactionKeepsStateAndShrinks) {
  TempDir dir;
  {
    service::Store store(dir.path);
    store.add_account("alice", "Alice", service::Role::Author);
    store.add_account("bob", "Bob", service::Role::Reviewer);
    store.add_target({"kg1", "", "default", "x.nt", "alice", ""});
    for (int i = 0; i < 20; ++i) {
      store.submit_review({"bob", "kg1", {{"correctness", i % 2 == 0}}, {}, "t"}, review::default_questions());
      store.set_policy({"default", 1 + i % 4, 0.5});
    }
    auto id = store.begin_assessment("kg1", json::object());
    store.finish_assessment(id, json::array(), "{\"achieved_level\": 0}");
  }
  auto size_before = fs::file_size(dir.path / "reviews.jsonl") + fs::file_size(dir.path / "policies.jsonl");
  std::vector<review::Review> reviews_before;
  {
    service::Store store(dir.path);
    reviews_before = store.reviews().reviews_for("kg1");
    store.compact();
  }
  auto size_after = fs::file_size(dir.path / "reviews.jsonl") + fs::file_size(dir.path / "policies.jsonl");
  EXPECT_LT(size_after, size_before);
  service::Store store(dir.path);
  EXPECT_EQ(store.reviews().reviews_for("kg1"), reviews_before);
  EXPECT_EQ(store.policy("default").min_reviews, 4);
  EXPECT_EQ(store.assessment("a-1")->state, service::AssessmentState::Finished);
  for (const auto& entry : fs::directory_iterator(dir.path)) {
    EXPECT_EQ(entry.path().extension(), ".jsonl") << entry.path();
  }
}

TEST(Store, TokenFile) {
  TempDir dir;
  service::Store store(dir.path);
  auto file = dir.path / "tokens.tsv";
  std::ofstream(file) << "# account role token\nroot\tadmin\ts3cret\nrev\treviewer\tt0ken\n";
  service::load_token_file(store, file.string());
  service::load_token_file(store, file.string());
  EXPECT_EQ(store.account_by_token("s3cret")->role, service::Role::Admin);
  EXPECT_EQ(store.account_by_token("t0ken")->id, "rev");
  std::ofstream(file) << "broken line\n";
  EXPECT_THROW(service::load_token_file(store, file.string()), service::StoreError);
}

// --- service, in process ------------------------------------------------------------

struct Level3 {
  TempDir dir;
  service::Store store{dir.path};
  service::Service svc{store, level3_config(), level3_transport()};
  std::string author_token, admin_token;
  std::map<std::string, std::string> reviewer_tokens;

  Level3() {
    author_token = store.add_account("author1", "Author", service::Role::Author);
    admin_token = store.add_account("admin", "Admin", service::Role::Admin);
    auto author = *store.account("author1");
    svc.create_target(author, {{"id", "level3"}, {"title", "Level 3 example"},
                               {"source", oracle::fixture_path("level3.nt")}});
    for (const auto& r : level3_reviews()) {
      std::string who = r.at("reviewer");
      reviewer_tokens[who] = store.add_account(who, who, service::Role::Reviewer);
    }
  }

  void submit_all() {
    for (const auto& r : level3_reviews()) {
      svc.submit_review(*store.account(r.at("reviewer")), "level3", r);
    }
  }
};

TEST(ServiceRun, Level3EndToEnd) {
  Level3 env;
  env.submit_all();
  auto rec = env.svc.run_assessment("level3");
  ASSERT_EQ(rec.state, service::AssessmentState::Finished) << rec.error;
  auto report = json::parse(rec.report);
  EXPECT_EQ(report.at("achieved_level"), 3);
  ASSERT_EQ(rec.results.size(), 20u);
  EXPECT_EQ(env.svc.report(rec.id), rec.report);
  EXPECT_EQ(env.svc.target_view("level3").at("assessments"), json::array({rec.id}));
}

TEST(ServiceRun, UnparseableSourceGivesFailedRecord) {
  TempDir dir;
  service::Store store(dir.path);
  service::Service svc(store, level3_config());
  store.add_account("a", "A", service::Role::Author);
  auto bad = dir.path / "bad.nt";
  std::ofstream(bad) << "<http://ex.org/s> <http://ex.org/p> \"unterminated .\n";
  svc.create_target(*store.account("a"), {{"id", "bad"}, {"source", bad.string()}});
  auto rec = svc.run_assessment("bad");
  EXPECT_EQ(rec.state, service::AssessmentState::Failed);
  EXPECT_FALSE(rec.error.empty());
  try {
    svc.report(rec.id);
    FAIL();
  } catch (const service::ApiError& e) {
    EXPECT_EQ(e.status(), 409);
  }
  svc.create_target(*store.account("a"), {{"id", "missing"}, {"source", (dir.path / "nope.nt").string()}});
  EXPECT_EQ(svc.run_assessment("missing").state, service::AssessmentState::Failed);
}

TEST(ServiceRun, BackgroundRun) {
  Level3 env;
  auto id = env.svc.start_assessment("level3");
  env.svc.wait_idle();
  EXPECT_EQ(env.svc.assessment(id).state, service::AssessmentState::Finished);
}

// --- REST ----------------------------------------------------------------------------

struct Server {
  service::RestServer rest;
  int port;
  std::thread thread;
  explicit Server(service::Service& svc) : rest(svc), port(rest.bind("127.0.0.1", 0)) {
    thread = std::thread([this] { rest.listen(); });
    httplib::Client probe("127.0.0.1", port);
    for (int i = 0; i < 200 && !probe.Get("/healthz"); ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  ~Server() {
    rest.stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(30, 0);
    return c;
  }
};

httplib::Headers bearer(const std::string& token) { return {{"Authorization", "Bearer " + token}}; }

int status_of(const httplib::Result& r) { return r ? r->status : -1; }

TEST(Rest, StatusCodes) {
  Level3 env;
  Server server(env.svc);
  auto c = server.client();

  auto health = c.Get("/healthz");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  EXPECT_EQ(json::parse(health->body).at("status"), "ok");
  auto cat = c.Get("/catalog");
  EXPECT_EQ(json::parse(cat->body).size(), 20u);
  EXPECT_EQ(json::parse(c.Get("/questions")->body).size(), 8u);

  json target{{"id", "kg2"}, {"source", oracle::fixture_path("level3.nt")}};
  EXPECT_EQ(status_of(c.Post("/targets", target.dump(), "application/json")), 401);
  EXPECT_EQ(status_of(c.Post("/targets", bearer("wrong"), target.dump(), "application/json")), 401);
  EXPECT_EQ(status_of(c.Post("/targets", bearer(env.reviewer_tokens["rev1"]), target.dump(), "application/json")), 403);
  auto created = c.Post("/targets", bearer(env.author_token), target.dump(), "application/json");
  ASSERT_EQ(status_of(created), 201);
  EXPECT_EQ(json::parse(created->body).at("author"), "author1");
  EXPECT_EQ(status_of(c.Post("/targets", bearer(env.author_token), target.dump(), "application/json")), 409);
  EXPECT_EQ(status_of(c.Post("/targets", bearer(env.author_token), "{not json", "application/json")), 400);
  EXPECT_EQ(status_of(c.Get("/targets/kg2")), 200);
  EXPECT_EQ(status_of(c.Get("/targets/none")), 404);

  json review{{"answers", {{"correctness", true}}}};
  EXPECT_EQ(status_of(c.Post("/targets/kg2/reviews", review.dump(), "application/json")), 401);
  EXPECT_EQ(status_of(c.Post("/targets/kg2/reviews", bearer(env.author_token), review.dump(), "application/json")), 403);
  EXPECT_EQ(status_of(c.Post("/targets/none/reviews", bearer(env.reviewer_tokens["rev1"]), review.dump(), "application/json")), 404);
  EXPECT_EQ(status_of(c.Post("/targets/kg2/reviews", bearer(env.reviewer_tokens["rev1"]), json{{"answers", json::object()}}.dump(), "application/json")), 400);
  auto submitted = c.Post("/targets/kg2/reviews", bearer(env.reviewer_tokens["rev1"]), review.dump(), "application/json");
  ASSERT_EQ(status_of(submitted), 201);
  EXPECT_FALSE(json::parse(submitted->body).at("id").get<std::string>().empty());

  auto feedback = c.Get("/targets/kg2/feedback");
  ASSERT_EQ(status_of(feedback), 200);
  auto fb = json::parse(feedback->body);
  EXPECT_EQ(fb.at("review_count"), 1);
  EXPECT_EQ(fb.at("quorum_met"), false);
  EXPECT_EQ(status_of(c.Get("/targets/none/feedback")), 404);

  json policy{{"min_reviews", 1}};
  EXPECT_EQ(status_of(c.Put("/policies/default", bearer(env.author_token), policy.dump(), "application/json")), 403);
  EXPECT_EQ(status_of(c.Put("/policies/default", bearer(env.admin_token), json{{"min_reviews", 0}}.dump(), "application/json")), 400);
  auto put = c.Put("/policies/default", bearer(env.admin_token), policy.dump(), "application/json");
  ASSERT_EQ(status_of(put), 200);
  EXPECT_EQ(json::parse(c.Get("/policies/default")->body).at("min_reviews"), 1);
  EXPECT_EQ(json::parse(c.Get("/targets/kg2/feedback")->body).at("quorum_met"), true);

  EXPECT_EQ(status_of(c.Post("/targets/kg2/assessments", "", "application/json")), 401);
  EXPECT_EQ(status_of(c.Post("/targets/none/assessments", bearer(env.author_token), "", "application/json")), 404);
  EXPECT_EQ(status_of(c.Get("/assessments/a-99")), 404);
  EXPECT_EQ(status_of(c.Get("/assessments/a-99/report")), 404);
}

// Runs the level3 flow over HTTP, then restarts the whole stack on the same
// data directory and checks every GET answers byte for byte the same.
TEST(Rest, AssessmentFlowSurvivesRestart) {
  TempDir dir;
  std::map<std::string, std::string> before;
  std::string assessment_id;
  std::vector<std::string> paths;
  {
    service::Store store(dir.path);
    service::Service svc(store, level3_config(), level3_transport());
    auto author = store.add_account("author1", "Author", service::Role::Author);
    Server server(svc);
    auto c = server.client();
    json target{{"id", "level3"}, {"source", oracle::fixture_path("level3.nt")}};
    ASSERT_EQ(status_of(c.Post("/targets", bearer(author), target.dump(), "application/json")), 201);
    for (const auto& r : level3_reviews()) {
      auto token = store.add_account(r.at("reviewer"), "R", service::Role::Reviewer);
      ASSERT_EQ(status_of(c.Post("/targets/level3/reviews", bearer(token), r.dump(), "application/json")), 201);
    }
    auto started = c.Post("/targets/level3/assessments", bearer(author), "", "application/json");
    ASSERT_EQ(status_of(started), 202);
    assessment_id = json::parse(started->body).at("id");
    EXPECT_EQ(started->get_header_value("Location"), "/assessments/" + assessment_id);
    json rec;
    for (int i = 0; i < 500; ++i) {
      rec = json::parse(c.Get("/assessments/" + assessment_id)->body);
      if (rec.at("state") != "running") break;
      std::this_thread::sleep_for(std::chrono::milliseconds(20));
    }
    ASSERT_EQ(rec.at("state"), "finished") << rec.dump();
    auto report = c.Get("/assessments/" + assessment_id + "/report");
    ASSERT_EQ(status_of(report), 200);
    EXPECT_EQ(report->body, store.assessment(assessment_id)->report);
    EXPECT_EQ(json::parse(report->body).at("achieved_level"), 3);

    paths = {"/targets/level3", "/assessments/" + assessment_id, "/assessments/" + assessment_id + "/report",
             "/targets/level3/feedback", "/policies/default", "/catalog"};
    for (const auto& p : paths) before[p] = c.Get(p)->body;
  }
  service::Store store(dir.path);
  service::Service svc(store, level3_config(), level3_transport());
  Server server(svc);
  auto c = server.client();
  for (const auto& p : paths) {
    auto r = c.Get(p);
    ASSERT_EQ(status_of(r), 200) << p;
    EXPECT_EQ(r->body, before[p]) << p;
  }
}

TEST(Rest, CatalogJson) {
  auto cat = service::catalog_json();
  ASSERT_EQ(cat.size(), 20u);
  auto rows = oracle::catalog_table();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto it = std::find_if(cat.begin(), cat.end(), [&](const json& m) { return m.at("id") == rows[i].measure; });
    ASSERT_NE(it, cat.end());
    EXPECT_EQ(it->at("level"), rows[i].level);
    EXPECT_EQ(it->at("stars"), rows[i].stars);
    EXPECT_EQ(it->at("dimension"), rows[i].dimension);
  }
}

// --- engine config -------------------------------------------------------------------

TEST(EngineConfig, RejectsInvalid) {
  EXPECT_THROW(service::engine_config_from_json(json{{"sample_size", 0}}), measures::ConfigError);
  EXPECT_THROW(service::engine_config_from_json(json{{"thresholds", {{"Conciseness", 2.0}}}}), std::exception);
  EXPECT_THROW(service::load_engine_config("/nonexistent/kgmm.json"), measures::ConfigError);
}

}  // namespace
