#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kgmm::probes {

using Seconds = std::chrono::duration<double>;

struct HttpRequest {
  std::string url;
  std::vector<std::pair<std::string, std::string>> headers;
  Seconds timeout{10.0};
};

struct HttpResponse {
  int status = 0;
  std::string content_type;
  std::string location;
  std::string body;
  Seconds elapsed{0.0};
};

// Raised for failures below HTTP: refused connections, timeouts, DNS.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One GET, no redirect following. Implementations must be safe for
// concurrent calls.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual HttpResponse get(const HttpRequest& request) = 0;
};

struct UrlParts {
  std::string scheme;
  std::string host;
  int port = 0;
  std::string target;  // path plus query, at least "/"
};

std::optional<UrlParts> split_url(const std::string& url);
// Resolves a Location header value against the URL that produced it.
std::string resolve_location(const std::string& base_url, const std::string& location);
std::string url_encode(std::string_view s);

// cpp-httplib backed transport for http:// and https:// URLs.
class HttpTransport : public Transport {
 public:
  HttpResponse get(const HttpRequest& request) override;
};

// Spaces requests to the same host at least 1/rate seconds apart.
class RateLimitedTransport : public Transport {
 public:
  RateLimitedTransport(Transport& inner, double requests_per_second);
  HttpResponse get(const HttpRequest& request) override;

 private:
  Transport& inner_;
  std::chrono::steady_clock::duration interval_;
  std::mutex mutex_;
  std::map<std::string, std::chrono::steady_clock::time_point> next_slot_;
};

// Offline transport answering from a fixed script keyed by URL. Each URL
// holds a sequence of outcomes consumed in order; the last one repeats.
// Every call is recorded with wall-clock start/end times so tests can
// check concurrency and pacing.
class ScriptedTransport : public Transport {
 public:
  struct Outcome {
    std::optional<HttpResponse> response;  // nullopt = transport failure
    std::string failure = "connection refused";
    Seconds hold{0.0};                     // real time spent inside get()
  };

  struct Call {
    std::string url;
    std::vector<std::pair<std::string, std::string>> headers;
    std::chrono::steady_clock::time_point started;
    std::chrono::steady_clock::time_point finished;
  };

  void add(std::string url, Outcome outcome);
  void respond(std::string url, int status, std::string content_type, std::string body = {},
               Seconds elapsed = Seconds{0.05});
  void redirect(std::string url, int status, std::string location);
  void fail(std::string url, std::string message = "connection refused");

  // Loads {"<url>": {"status":200,"content_type":"...","body":"...",
  // "elapsed":0.1,"location":"..."} | {"error":"..."} | [ ...sequence ]}.
  static std::unique_ptr<ScriptedTransport> from_json_text(const std::string& text);

  HttpResponse get(const HttpRequest& request) override;

  std::vector<Call> calls() const;
  int max_in_flight() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<Outcome>> script_;
  std::map<std::string, std::size_t> cursor_;
  std::vector<Call> calls_;
  int in_flight_ = 0;
  int max_in_flight_ = 0;
};

}  // namespace kgmm::probes
