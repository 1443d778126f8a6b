#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgmm/review/review.hpp"

namespace kgmm::service {

struct Target {
  std::string id;
  std::string title;
  std::string field = "default";
  std::string source;  // file path or http(s) URL of the graph
  std::string author;
  std::string created_at;

  bool operator==(const Target&) const = default;
};

enum class Role { Author, Reviewer, Admin };

struct Account {
  std::string id;
  std::string name;
  std::string token_hash;  // hex SHA-256 of the bearer token
  Role role = Role::Reviewer;

  bool operator==(const Account&) const = default;
};

enum class AssessmentState { Running, Finished, Failed };

struct AssessmentRecord {
  std::string id;
  std::string target;
  AssessmentState state = AssessmentState::Running;
  nlohmann::json config;   // snapshot of the engine configuration
  nlohmann::json results;  // array of 20 measure results once finished
  std::string report;      // report document, served byte for byte
  std::string error;
  std::string started_at;
  std::string finished_at;

  bool operator==(const AssessmentRecord&) const = default;
};

class StoreError : public std::runtime_error {
 public:
  enum class Kind { Conflict, NotFound, Invalid, Io };
  StoreError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

std::string_view to_string(Role r);
std::optional<Role> role_from_string(std::string_view s);
std::string_view to_string(AssessmentState s);

std::string sha256_hex(std::string_view data);
std::string random_token();

nlohmann::json to_json(const Target& t);
nlohmann::json to_json(const AssessmentRecord& r);
// Public view of an account; the token hash stays inside the store.
nlohmann::json to_public_json(const Account& a);

// Append-only JSON-lines persistence under one directory, one file per
// entity kind. State is rebuilt by replaying the files on open; compact()
// rewrites each file through a temporary and an atomic rename.
class Store : public review::Directory {
 public:
  explicit Store(std::filesystem::path dir);

  const std::filesystem::path& dir() const noexcept { return dir_; }

  void add_target(const Target& t);
  std::optional<Target> target(const std::string& id) const;
  std::vector<Target> targets() const;
  std::string next_target_id() const;

  // Registers an account and returns its freshly generated bearer token.
  std::string add_account(const std::string& id, const std::string& name, Role role);
  void add_account_with_token(const std::string& id, const std::string& name, Role role,
                              const std::string& token);
  std::optional<Account> account(const std::string& id) const;
  std::optional<Account> account_by_token(const std::string& token) const;

  std::string submit_review(const review::Review& r, std::span<const review::ReviewQuestion> questions);
  const review::ReviewStore& reviews() const noexcept { return reviews_; }

  review::ReviewPolicy set_policy(const review::ReviewPolicy& p);
  review::ReviewPolicy policy(const std::string& field) const { return policies_.get(field); }

  std::string begin_assessment(const std::string& target, const nlohmann::json& config);
  void finish_assessment(const std::string& id, nlohmann::json results, std::string report);
  void fail_assessment(const std::string& id, const std::string& error);
  std::optional<AssessmentRecord> assessment(const std::string& id) const;
  std::vector<std::string> assessments_for(const std::string& target) const;

  void compact();

  bool is_registered(const std::string& account) const override;
  std::optional<std::string> author_of(const std::string& target) const override;

 private:
  void replay();
  void append(const std::string& file, const nlohmann::json& line);
  void put_assessment(const AssessmentRecord& r);

  std::filesystem::path dir_;
  mutable std::recursive_mutex mutex_;
  std::map<std::string, Target> targets_;
  std::map<std::string, Account> accounts_;
  std::map<std::string, std::string> account_by_hash_;
  review::ReviewStore reviews_;
  review::PolicyStore policies_;
  std::map<std::string, AssessmentRecord> assessments_;
  std::size_t next_assessment_ = 1;
};

}  // namespace kgmm::service
