#include <httplib.h>

#include "kgmm/service/service.hpp"

namespace kgmm::service {

using nlohmann::json;

struct RestServer::Impl {
  Service& service;
  httplib::Server server;

  explicit Impl(Service& s) : service(s) { routes(); }

  static void send(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(2) + "\n", "application/json");
  }

  static json body_of(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    json doc = json::parse(req.body, nullptr, false);
    if (doc.is_discarded()) throw ApiError(400, "request body is not valid JSON");
    return doc;
  }

  Account auth(const httplib::Request& req) {
    return service.authenticate(req.get_header_value("Authorization"));
  }

  template <typename F>
  httplib::Server::Handler guarded(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const ApiError& e) {
        send(res, e.status(), {{"error", e.what()}});
      } catch (const std::exception& e) {
        send(res, 500, {{"error", e.what()}});
      }
    };
  }

  void routes() {
    server.Get("/healthz", guarded([](const httplib::Request&, httplib::Response& res) {
      send(res, 200, {{"status", "ok"}, {"version", "0.3.0"}});
    }));
    server.Get("/catalog", guarded([](const httplib::Request&, httplib::Response& res) {
      send(res, 200, catalog_json());
    }));
    server.Get("/questions", guarded([this](const httplib::Request&, httplib::Response& res) {
      json qs = json::array();
      for (const auto& q : service.config().questions) qs.push_back(review::to_json(q));
      send(res, 200, qs);
    }));
    server.Post("/targets", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Account by = auth(req);
      send(res, 201, to_json(service.create_target(by, body_of(req))));
    }));
    server.Get(R"(/targets/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, service.target_view(req.matches[1]));
    }));
    server.Post(R"(/targets/([^/]+)/assessments)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  auth(req);
                  std::string id = service.start_assessment(req.matches[1]);
                  res.set_header("Location", "/assessments/" + id);
                  send(res, 202, {{"id", id}, {"state", "running"}});
                }));
    server.Get(R"(/assessments/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, to_json(service.assessment(req.matches[1])));
    }));
    server.Get(R"(/assessments/([^/]+)/report)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 res.status = 200;
                 res.set_content(service.report(req.matches[1]), "application/json");
               }));
    server.Post(R"(/targets/([^/]+)/reviews)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  Account by = auth(req);
                  std::string target = req.matches[1];
                  std::string id = service.submit_review(by, target, body_of(req));
                  send(res, 201, {{"id", id}, {"review_url", "/targets/" + target + "/reviews/" + id}});
                }));
    server.Get(R"(/targets/([^/]+)/feedback)",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 send(res, 200, review::to_json(service.feedback(req.matches[1])));
               }));
    server.Get(R"(/policies/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, review::to_json(service.get_policy(req.matches[1])));
    }));
    server.Put(R"(/policies/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      Account by = auth(req);
      send(res, 200, review::to_json(service.put_policy(by, req.matches[1], body_of(req))));
    }));
  }
};

RestServer::RestServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}

RestServer::~RestServer() { stop(); }

int RestServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void RestServer::listen() { impl_->server.listen_after_bind(); }

void RestServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace kgmm::service
