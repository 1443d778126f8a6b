#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kgmm/probes/transport.hpp"
#include "kgmm/service/engine.hpp"
#include "kgmm/service/store.hpp"

namespace kgmm::service {

// An error with the HTTP status the REST layer should answer with.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, const std::string& what) : std::runtime_error(what), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

using TransportFactory = std::function<std::unique_ptr<probes::Transport>()>;

// Application logic behind the REST routes and the CLI. Methods throw
// ApiError; errors from lower layers are translated to matching statuses.
class Service {
 public:
  // Without a transport factory every run behaves as offline.
  Service(Store& store, EngineConfig cfg, TransportFactory transports = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  const EngineConfig& config() const noexcept { return cfg_; }
  Store& store() noexcept { return store_; }

  // Accepts "Bearer <token>"; 401 otherwise.
  Account authenticate(const std::string& authorization) const;

  Target create_target(const Account& by, const nlohmann::json& body);
  nlohmann::json target_view(const std::string& id) const;

  std::string submit_review(const Account& by, const std::string& target, const nlohmann::json& body);
  review::ReviewAggregate aggregate(const std::string& target) const;
  review::FeedbackReport feedback(const std::string& target) const;

  review::ReviewPolicy get_policy(const std::string& field) const;
  review::ReviewPolicy put_policy(const Account& by, const std::string& field, const nlohmann::json& body);

  // Runs to completion on the calling thread and returns the stored record,
  // which is in state failed when the graph could not be loaded.
  AssessmentRecord run_assessment(const std::string& target);
  // Starts a run in the background and returns its id immediately.
  std::string start_assessment(const std::string& target);
  AssessmentRecord assessment(const std::string& id) const;
  // Serialized report of a finished assessment.
  std::string report(const std::string& id) const;
  void wait_idle();

 private:
  void execute(const std::string& assessment_id, const Target& target);

  Store& store_;
  EngineConfig cfg_;
  TransportFactory transports_;
  std::mutex workers_mutex_;
  std::vector<std::jthread> workers_;
};

nlohmann::json catalog_json();

// Loads "account<TAB>role<TAB>token" lines into the store.
void load_token_file(Store& store, const std::string& path);

class RestServer {
 public:
  explicit RestServer(Service& service);
  ~RestServer();

  // Binds without serving; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  // Serves until stop() is called.
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kgmm::service
