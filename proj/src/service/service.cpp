#include "kgmm/service/service.hpp"

#include <fstream>
#include <sstream>

#include "kgmm/measures/catalog.hpp"

namespace kgmm::service {

using nlohmann::json;

namespace {

[[noreturn]] void rethrow_as_api_error() {
  try {
    throw;
  } catch (const ApiError&) {
    throw;
  } catch (const review::ReviewError& e) {
    using K = review::ReviewError::Kind;
    switch (e.kind()) {
      case K::UnregisteredReviewer: throw ApiError(401, e.what());
      case K::UnknownTarget: throw ApiError(404, e.what());
      case K::SelfReview: throw ApiError(403, e.what());
      case K::InvalidReview:
      case K::InvalidPolicy: throw ApiError(400, e.what());
    }
    throw ApiError(400, e.what());
  } catch (const StoreError& e) {
    using K = StoreError::Kind;
    switch (e.kind()) {
      case K::Conflict: throw ApiError(409, e.what());
      case K::NotFound: throw ApiError(404, e.what());
      case K::Invalid: throw ApiError(400, e.what());
      case K::Io: throw ApiError(500, e.what());
    }
    throw ApiError(500, e.what());
  } catch (const json::exception& e) {
    throw ApiError(400, std::string("malformed document: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ApiError(400, e.what());
  }
}

template <typename F>
auto translated(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (...) {
    rethrow_as_api_error();
  }
}

Target require_target(const Store& store, const std::string& id) {
  auto t = store.target(id);
  if (!t) throw ApiError(404, "unknown target '" + id + "'");
  return *t;
}

}  // namespace

Service::Service(Store& store, EngineConfig cfg, TransportFactory transports)
    : store_(store), cfg_(std::move(cfg)), transports_(std::move(transports)) {}

Service::~Service() { wait_idle(); }

Account Service::authenticate(const std::string& authorization) const {
  static constexpr std::string_view kPrefix = "Bearer ";
  if (!authorization.starts_with(kPrefix)) throw ApiError(401, "missing bearer token");
  auto account = store_.account_by_token(authorization.substr(kPrefix.size()));
  if (!account) throw ApiError(401, "invalid token");
  return *account;
}

Target Service::create_target(const Account& by, const json& body) {
  if (by.role == Role::Reviewer) throw ApiError(403, "reviewers cannot register targets");
  return translated([&] {
    if (!body.is_object()) throw ApiError(400, "target document must be an object");
    Target t;
    t.id = body.value("id", std::string());
    if (t.id.empty()) t.id = store_.next_target_id();
    t.title = body.value("title", std::string());
    t.field = body.value("field", std::string("default"));
    if (t.field.empty()) t.field = "default";
    t.source = body.value("source", std::string());
    if (t.source.empty()) throw ApiError(400, "target needs a graph source");
    t.author = by.id;
    t.created_at = iso8601_now();
    store_.add_target(t);
    return t;
  });
}

json Service::target_view(const std::string& id) const {
  Target t = require_target(store_, id);
  json j = to_json(t);
  j["assessments"] = store_.assessments_for(id);
  return j;
}

std::string Service::submit_review(const Account& by, const std::string& target, const json& body) {
  return translated([&] {
    if (!body.is_object()) throw ApiError(400, "review document must be an object");
    review::Review r = review::review_from_json(body);
    if (!r.reviewer.empty() && r.reviewer != by.id) {
      throw ApiError(403, "reviews can only be submitted for the authenticated account");
    }
    r.reviewer = by.id;
    r.target = target;
    r.submitted_at = iso8601_now();
    return store_.submit_review(r, cfg_.questions);
  });
}

review::ReviewAggregate Service::aggregate(const std::string& target) const {
  Target t = require_target(store_, target);
  return translated([&] {
    return review::aggregate(store_.reviews(), store_, target, store_.policy(t.field), cfg_.questions);
  });
}

review::FeedbackReport Service::feedback(const std::string& target) const {
  Target t = require_target(store_, target);
  return translated([&] {
    return review::feedback_report(store_.reviews(), store_, target, store_.policy(t.field),
                                   cfg_.questions);
  });
}

review::ReviewPolicy Service::get_policy(const std::string& field) const { return store_.policy(field); }

review::ReviewPolicy Service::put_policy(const Account& by, const std::string& field, const json& body) {
  if (by.role != Role::Admin) throw ApiError(403, "only admins can change review policies");
  return translated([&] {
    if (!body.is_object()) throw ApiError(400, "policy document must be an object");
    review::ReviewPolicy p = store_.policy(field);
    if (body.contains("min_reviews")) p.min_reviews = body.at("min_reviews").get<int>();
    if (body.contains("agreement_threshold")) {
      p.agreement_threshold = body.at("agreement_threshold").get<double>();
    }
    p.field = field;
    return store_.set_policy(p);
  });
}

void Service::execute(const std::string& assessment_id, const Target& target) {
  try {
    std::unique_ptr<probes::Transport> transport;
    if (transports_ && !cfg_.assessment.offline) transport = transports_();
    rdf::Graph g = load_graph(target.source, transport.get());
    auto reviews = store_.reviews().reviews_for(target.id);
    AssessmentOutcome out =
        assess(g, cfg_, target.id, reviews, store_.policy(target.field), transport.get());
    json results = json::array();
    for (const auto& r : out.results) results.push_back(to_json(r));
    store_.finish_assessment(assessment_id, std::move(results), report_document(out.report));
  } catch (const std::exception& e) {
    store_.fail_assessment(assessment_id, e.what());
  }
}

AssessmentRecord Service::run_assessment(const std::string& target) {
  Target t = require_target(store_, target);
  std::string id = translated([&] { return store_.begin_assessment(target, to_json(cfg_)); });
  execute(id, t);
  return *store_.assessment(id);
}

std::string Service::start_assessment(const std::string& target) {
  Target t = require_target(store_, target);
  std::string id = translated([&] { return store_.begin_assessment(target, to_json(cfg_)); });
  std::lock_guard lock(workers_mutex_);
  workers_.emplace_back([this, id, t] { execute(id, t); });
  return id;
}

AssessmentRecord Service::assessment(const std::string& id) const {
  auto r = store_.assessment(id);
  if (!r) throw ApiError(404, "unknown assessment '" + id + "'");
  return *r;
}

std::string Service::report(const std::string& id) const {
  AssessmentRecord r = assessment(id);
  if (r.state == AssessmentState::Running) throw ApiError(409, "assessment " + id + " is still running");
  if (r.state == AssessmentState::Failed) throw ApiError(409, "assessment " + id + " failed: " + r.error);
  return r.report;
}

void Service::wait_idle() {
  std::vector<std::jthread> done;
  {
    std::lock_guard lock(workers_mutex_);
    done.swap(workers_);
  }
  done.clear();
}

json catalog_json() {
  json out = json::array();
  for (const auto& def : measures::catalog()) {
    json sources = json::array();
    if (def.sources.automated) sources.push_back("automated");
    if (def.sources.human) sources.push_back("human_review");
    json modes = json::array();
    if (def.modes.human) modes.push_back("H");
    if (def.modes.machine) modes.push_back("M");
    out.push_back({{"id", measures::to_string(def.id)},
                   {"dimension", measures::to_string(def.dimension)},
                   {"level", def.level},
                   {"level_name", measures::level_name(def.level)},
                   {"priority", measures::to_string(def.priority)},
                   {"stars", measures::stars(def.priority)},
                   {"modes", modes},
                   {"description", def.description},
                   {"sources", sources}});
  }
  return out;
}

void load_token_file(Store& store, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StoreError(StoreError::Kind::Io, "cannot read token file " + path);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.empty() || line.starts_with('#')) continue;
    std::istringstream fields(line);
    std::string id, role, token;
    if (!(fields >> id >> role >> token)) {
      throw StoreError(StoreError::Kind::Invalid, path + ":" + std::to_string(line_no) +
                                                      ": expected account, role and token");
    }
    auto r = role_from_string(role);
    if (!r) throw StoreError(StoreError::Kind::Invalid, path + ": unknown role " + role);
    auto existing = store.account(id);
    if (existing && existing->token_hash == sha256_hex(token) && existing->role == *r) continue;
    store.add_account_with_token(id, existing ? existing->name : id, *r, token);
  }
}

}  // namespace kgmm::service
