#include "kgmm/service/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <cstdio>
#include <fstream>

#include "kgmm/service/engine.hpp"

namespace kgmm::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kTargets = "targets.jsonl";
constexpr const char* kAccounts = "accounts.jsonl";
constexpr const char* kReviews = "reviews.jsonl";
constexpr const char* kPolicies = "policies.jsonl";
constexpr const char* kAssessments = "assessments.jsonl";

std::string hex(const unsigned char* data, std::size_t n) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) {
    out += digits[data[i] >> 4];
    out += digits[data[i] & 0xF];
  }
  return out;
}

void write_all(int fd, const std::string& data, const fs::path& path) {
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    ssize_t n = ::write(fd, p, left);
    if (n < 0) throw StoreError(StoreError::Kind::Io, "write failed for " + path.string());
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

Target target_from_json(const json& j) {
  return {j.at("id"), j.value("title", ""), j.value("field", "default"), j.value("source", ""),
          j.value("author", ""), j.value("created_at", "")};
}

json account_json(const Account& a) {
  return {{"id", a.id}, {"name", a.name}, {"token_hash", a.token_hash}, {"role", to_string(a.role)}};
}

AssessmentRecord assessment_from_json(const json& j) {
  AssessmentRecord r;
  r.id = j.at("id");
  r.target = j.at("target");
  std::string state = j.at("state");
  r.state = state == "finished" ? AssessmentState::Finished
            : state == "failed" ? AssessmentState::Failed
                                : AssessmentState::Running;
  r.config = j.value("config", json());
  r.results = j.value("results", json());
  r.report = j.value("report_document", "");
  r.error = j.value("error", "");
  r.started_at = j.value("started_at", "");
  r.finished_at = j.value("finished_at", "");
  return r;
}

json assessment_storage_json(const AssessmentRecord& r) {
  json j = to_json(r);
  j["report_document"] = r.report;
  j.erase("report");
  return j;
}

}  // namespace

std::string_view to_string(Role r) {
  switch (r) {
    case Role::Author: return "author";
    case Role::Reviewer: return "reviewer";
    case Role::Admin: return "admin";
  }
  return "reviewer";
}

std::optional<Role> role_from_string(std::string_view s) {
  for (Role r : {Role::Author, Role::Reviewer, Role::Admin}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::string_view to_string(AssessmentState s) {
  switch (s) {
    case AssessmentState::Running: return "running";
    case AssessmentState::Finished: return "finished";
    case AssessmentState::Failed: return "failed";
  }
  return "running";
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 computation failed");
  }
  return hex(digest, len);
}

std::string random_token() {
  unsigned char bytes[24];
  if (RAND_bytes(bytes, sizeof bytes) != 1) throw std::runtime_error("random token generation failed");
  return hex(bytes, sizeof bytes);
}

json to_json(const Target& t) {
  return {{"id", t.id},         {"title", t.title},   {"field", t.field},
          {"source", t.source}, {"author", t.author}, {"created_at", t.created_at}};
}

json to_json(const AssessmentRecord& r) {
  json j = {{"id", r.id},
            {"target", r.target},
            {"state", to_string(r.state)},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at},
            {"error", r.error},
            {"config", r.config},
            {"results", r.results}};
  json report = r.report.empty() ? json(nullptr) : json::parse(r.report, nullptr, false);
  j["report"] = report;
  j["achieved_level"] = report.is_object() ? report.at("achieved_level") : json(nullptr);
  return j;
}

json to_public_json(const Account& a) {
  return {{"id", a.id}, {"name", a.name}, {"role", to_string(a.role)}};
}

Store::Store(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw StoreError(StoreError::Kind::Io, "cannot create data directory " + dir_.string());
  replay();
}

void Store::replay() {
  auto each_line = [&](const char* file, auto&& apply) {
    std::ifstream in(dir_ / file);
    if (!in) return;
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) lines.push_back(line);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      json j = json::parse(lines[i], nullptr, false);
      if (j.is_discarded()) {
        // A torn final line is what an interrupted append leaves behind.
        if (i + 1 == lines.size()) break;
        throw StoreError(StoreError::Kind::Invalid,
                         std::string(file) + ": corrupt record on line " + std::to_string(i + 1));
      }
      apply(j);
    }
  };
  each_line(kTargets, [&](const json& j) {
    Target t = target_from_json(j);
    targets_[t.id] = t;
  });
  each_line(kAccounts, [&](const json& j) {
    Account a{j.at("id"), j.value("name", ""), j.at("token_hash"),
              role_from_string(j.value("role", "reviewer")).value_or(Role::Reviewer)};
    if (auto old = accounts_.find(a.id); old != accounts_.end()) {
      account_by_hash_.erase(old->second.token_hash);
    }
    account_by_hash_[a.token_hash] = a.id;
    accounts_[a.id] = a;
  });
  each_line(kReviews, [&](const json& j) {
    reviews_.restore({j.at("id"), review::review_from_json(j.at("review"))});
  });
  each_line(kPolicies, [&](const json& j) { policies_.set(review::policy_from_json(j)); });
  each_line(kAssessments, [&](const json& j) {
    AssessmentRecord r = assessment_from_json(j);
    if (r.id.starts_with("a-")) {
      try {
        next_assessment_ = std::max(next_assessment_, std::stoul(r.id.substr(2)) + 1);
      } catch (const std::exception&) {
      }
    }
    assessments_[r.id] = std::move(r);
  });
}

void Store::append(const std::string& file, const json& line) {
  fs::path path = dir_ / file;
  int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreError(StoreError::Kind::Io, "cannot open " + path.string());
  try {
    write_all(fd, line.dump() + "\n", path);
    ::fsync(fd);
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

void Store::add_target(const Target& t) {
  std::lock_guard lock(mutex_);
  if (t.id.empty()) throw StoreError(StoreError::Kind::Invalid, "target id must not be empty");
  if (targets_.contains(t.id)) throw StoreError(StoreError::Kind::Conflict, "target '" + t.id + "' exists");
  Target stored = t;
  if (stored.field.empty()) stored.field = "default";
  append(kTargets, to_json(stored));
  targets_[stored.id] = stored;
}

std::optional<Target> Store::target(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = targets_.find(id);
  if (it == targets_.end()) return std::nullopt;
  return it->second;
}

std::vector<Target> Store::targets() const {
  std::lock_guard lock(mutex_);
  std::vector<Target> out;
  for (const auto& [id, t] : targets_) out.push_back(t);
  return out;
}

std::string Store::next_target_id() const {
  std::lock_guard lock(mutex_);
  for (std::size_t n = targets_.size() + 1;; ++n) {
    std::string id = "t-" + std::to_string(n);
    if (!targets_.contains(id)) return id;
  }
}

std::string Store::add_account(const std::string& id, const std::string& name, Role role) {
  std::string token = random_token();
  add_account_with_token(id, name, role, token);
  return token;
}

void Store::add_account_with_token(const std::string& id, const std::string& name, Role role,
                                   const std::string& token) {
  std::lock_guard lock(mutex_);
  if (id.empty()) throw StoreError(StoreError::Kind::Invalid, "account id must not be empty");
  if (token.empty()) throw StoreError(StoreError::Kind::Invalid, "token must not be empty");
  Account a{id, name, sha256_hex(token), role};
  if (auto other = account_by_hash_.find(a.token_hash);
      other != account_by_hash_.end() && other->second != id) {
    throw StoreError(StoreError::Kind::Conflict, "token already in use");
  }
  append(kAccounts, account_json(a));
  if (auto old = accounts_.find(id); old != accounts_.end()) account_by_hash_.erase(old->second.token_hash);
  account_by_hash_[a.token_hash] = id;
  accounts_[id] = a;
}

std::optional<Account> Store::account(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = accounts_.find(id);
  if (it == accounts_.end()) return std::nullopt;
  return it->second;
}

std::optional<Account> Store::account_by_token(const std::string& token) const {
  if (token.empty()) return std::nullopt;
  std::string h = sha256_hex(token);
  std::lock_guard lock(mutex_);
  auto it = account_by_hash_.find(h);
  if (it == account_by_hash_.end()) return std::nullopt;
  return accounts_.at(it->second);
}

std::string Store::submit_review(const review::Review& r,
                                 std::span<const review::ReviewQuestion> questions) {
  std::lock_guard lock(mutex_);
  std::string id = reviews_.submit(r, *this, questions);
  append(kReviews, {{"id", id}, {"review", review::to_json(r)}});
  return id;
}

review::ReviewPolicy Store::set_policy(const review::ReviewPolicy& p) {
  std::lock_guard lock(mutex_);
  review::ReviewPolicy stored = policies_.set(p);
  append(kPolicies, review::to_json(stored));
  return stored;
}

void Store::put_assessment(const AssessmentRecord& r) {
  append(kAssessments, assessment_storage_json(r));
  assessments_[r.id] = r;
}

std::string Store::begin_assessment(const std::string& target, const json& config) {
  std::lock_guard lock(mutex_);
  if (!targets_.contains(target)) {
    throw StoreError(StoreError::Kind::NotFound, "unknown target '" + target + "'");
  }
  AssessmentRecord r;
  r.id = "a-" + std::to_string(next_assessment_++);
  r.target = target;
  r.config = config;
  r.started_at = iso8601_now();
  put_assessment(r);
  return r.id;
}

void Store::finish_assessment(const std::string& id, json results, std::string report) {
  std::lock_guard lock(mutex_);
  auto it = assessments_.find(id);
  if (it == assessments_.end()) throw StoreError(StoreError::Kind::NotFound, "unknown assessment " + id);
  if (it->second.state != AssessmentState::Running) {
    throw StoreError(StoreError::Kind::Conflict, "assessment " + id + " is already complete");
  }
  AssessmentRecord r = it->second;
  r.state = AssessmentState::Finished;
  r.results = std::move(results);
  r.report = std::move(report);
  r.finished_at = iso8601_now();
  put_assessment(r);
}

void Store::fail_assessment(const std::string& id, const std::string& error) {
  std::lock_guard lock(mutex_);
  auto it = assessments_.find(id);
  if (it == assessments_.end()) throw StoreError(StoreError::Kind::NotFound, "unknown assessment " + id);
  if (it->second.state != AssessmentState::Running) {
    throw StoreError(StoreError::Kind::Conflict, "assessment " + id + " is already complete");
  }
  AssessmentRecord r = it->second;
  r.state = AssessmentState::Failed;
  r.error = error;
  r.finished_at = iso8601_now();
  put_assessment(r);
}

std::optional<AssessmentRecord> Store::assessment(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = assessments_.find(id);
  if (it == assessments_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> Store::assessments_for(const std::string& target) const {
  std::lock_guard lock(mutex_);
  std::vector<std::pair<std::size_t, std::string>> found;
  for (const auto& [id, r] : assessments_) {
    if (r.target != target) continue;
    std::size_t n = 0;
    try {
      n = std::stoul(id.substr(2));
    } catch (const std::exception&) {
    }
    found.emplace_back(n, id);
  }
  std::sort(found.begin(), found.end());
  std::vector<std::string> out;
  for (auto& [n, id] : found) out.push_back(std::move(id));
  return out;
}

void Store::compact() {
  std::lock_guard lock(mutex_);
  auto rewrite = [&](const char* file, const std::vector<json>& lines) {
    fs::path path = dir_ / file;
    fs::path tmp = dir_ / (std::string(file) + ".tmp");
    int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
    if (fd < 0) throw StoreError(StoreError::Kind::Io, "cannot open " + tmp.string());
    std::string data;
    for (const auto& j : lines) data += j.dump() + "\n";
    try {
      write_all(fd, data, tmp);
      ::fsync(fd);
    } catch (...) {
      ::close(fd);
      throw;
    }
    ::close(fd);
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
      throw StoreError(StoreError::Kind::Io, "cannot rename " + tmp.string());
    }
  };
  std::vector<json> lines;
  for (const auto& [id, t] : targets_) lines.push_back(to_json(t));
  rewrite(kTargets, lines);
  lines.clear();
  for (const auto& [id, a] : accounts_) lines.push_back(account_json(a));
  rewrite(kAccounts, lines);
  lines.clear();
  for (const auto& s : reviews_.all()) lines.push_back({{"id", s.id}, {"review", review::to_json(s.review)}});
  rewrite(kReviews, lines);
  lines.clear();
  for (const auto& p : policies_.all()) lines.push_back(review::to_json(p));
  rewrite(kPolicies, lines);
  lines.clear();
  for (const auto& [id, r] : assessments_) lines.push_back(assessment_storage_json(r));
  rewrite(kAssessments, lines);
  int dfd = ::open(dir_.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
  if (dfd >= 0) {
    ::fsync(dfd);
    ::close(dfd);
  }
}

bool Store::is_registered(const std::string& account) const {
  std::lock_guard lock(mutex_);
  return accounts_.contains(account);
}

std::optional<std::string> Store::author_of(const std::string& target) const {
  std::lock_guard lock(mutex_);
  auto it = targets_.find(target);
  if (it == targets_.end()) return std::nullopt;
  return it->second.author;
}

}  // namespace kgmm::service
