#include "kgmm/probes/transport.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <json.hpp>
#include <thread>

#include "kgmm/rdf/turtle.hpp"

namespace kgmm::probes {

std::optional<UrlParts> split_url(const std::string& url) {
  std::size_t sep = url.find("://");
  if (sep == std::string::npos || sep == 0) return std::nullopt;
  UrlParts parts;
  parts.scheme = url.substr(0, sep);
  std::transform(parts.scheme.begin(), parts.scheme.end(), parts.scheme.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::size_t host_start = sep + 3;
  std::size_t path_start = url.find_first_of("/?#", host_start);
  std::string authority = url.substr(host_start, path_start == std::string::npos
                                                     ? std::string::npos
                                                     : path_start - host_start);
  if (std::size_t at = authority.rfind('@'); at != std::string::npos) {
    authority = authority.substr(at + 1);
  }
  if (authority.empty()) return std::nullopt;
  std::size_t colon = authority.rfind(':');
  if (colon != std::string::npos && authority.find(']') == std::string::npos) {
    std::string port = authority.substr(colon + 1);
    if (port.empty() || !std::all_of(port.begin(), port.end(), ::isdigit)) return std::nullopt;
    parts.port = std::stoi(port);
    parts.host = authority.substr(0, colon);
  } else {
    parts.host = authority;
    parts.port = parts.scheme == "https" ? 443 : 80;
  }
  std::string rest = path_start == std::string::npos ? "" : url.substr(path_start);
  if (std::size_t hash = rest.find('#'); hash != std::string::npos) rest.resize(hash);
  if (rest.empty() || rest.front() != '/') rest.insert(0, "/");
  parts.target = rest;
  return parts;
}

std::string resolve_location(const std::string& base_url, const std::string& location) {
  return rdf::resolve_iri(base_url, location);
}

std::string url_encode(std::string_view s) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '-' || c == '.' || c == '_' || c == '~') {
      out += c;
    } else {
      out += '%';
      out += kHex[u >> 4];
      out += kHex[u & 0xF];
    }
  }
  return out;
}

HttpResponse HttpTransport::get(const HttpRequest& request) {
  auto parts = split_url(request.url);
  if (!parts || (parts->scheme != "http" && parts->scheme != "https")) {
    throw TransportError("unsupported URL '" + request.url + "'");
  }
  httplib::Client client(parts->scheme + "://" + parts->host + ":" + std::to_string(parts->port));
  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout);
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_follow_location(false);

  httplib::Headers headers;
  for (const auto& [name, value] : request.headers) headers.emplace(name, value);

  auto start = std::chrono::steady_clock::now();
  auto result = client.Get(parts->target, headers);
  auto elapsed = std::chrono::steady_clock::now() - start;
  if (!result) throw TransportError(httplib::to_string(result.error()));

  HttpResponse response;
  response.status = result->status;
  response.content_type = result->get_header_value("Content-Type");
  response.location = result->get_header_value("Location");
  response.body = result->body;
  response.elapsed = std::chrono::duration_cast<Seconds>(elapsed);
  return response;
}

RateLimitedTransport::RateLimitedTransport(Transport& inner, double requests_per_second)
    : inner_(inner),
      interval_(requests_per_second > 0
                    ? std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          Seconds{1.0 / requests_per_second})
                    : std::chrono::steady_clock::duration::zero()) {}

HttpResponse RateLimitedTransport::get(const HttpRequest& request) {
  if (interval_ > std::chrono::steady_clock::duration::zero()) {
    auto parts = split_url(request.url);
    std::string host = parts ? parts->host + ":" + std::to_string(parts->port) : request.url;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mutex_);
      auto now = std::chrono::steady_clock::now();
      auto& next = next_slot_[host];
      slot = std::max(now, next);
      next = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }
  return inner_.get(request);
}

void ScriptedTransport::add(std::string url, Outcome outcome) {
  std::lock_guard lock(mutex_);
  script_[std::move(url)].push_back(std::move(outcome));
}

void ScriptedTransport::respond(std::string url, int status, std::string content_type,
                                std::string body, Seconds elapsed) {
  HttpResponse r;
  r.status = status;
  r.content_type = std::move(content_type);
  r.body = std::move(body);
  r.elapsed = elapsed;
  add(std::move(url), Outcome{r});
}

void ScriptedTransport::redirect(std::string url, int status, std::string location) {
  HttpResponse r;
  r.status = status;
  r.location = std::move(location);
  r.elapsed = Seconds{0.01};
  add(std::move(url), Outcome{r});
}

void ScriptedTransport::fail(std::string url, std::string message) {
  add(std::move(url), Outcome{std::nullopt, std::move(message)});
}

namespace {

ScriptedTransport::Outcome outcome_from_json(const nlohmann::json& j) {
  ScriptedTransport::Outcome o;
  if (j.contains("hold")) o.hold = Seconds{j.at("hold").get<double>()};
  if (j.contains("error")) {
    o.failure = j.at("error").get<std::string>();
    return o;
  }
  HttpResponse r;
  r.status = j.value("status", 200);
  r.content_type = j.value("content_type", "");
  r.location = j.value("location", "");
  r.body = j.value("body", "");
  r.elapsed = Seconds{j.value("elapsed", 0.05)};
  o.response = r;
  return o;
}

}  // namespace

std::unique_ptr<ScriptedTransport> ScriptedTransport::from_json_text(const std::string& text) {
  auto doc = nlohmann::json::parse(text);
  if (!doc.is_object()) throw std::invalid_argument("HTTP fixture must be a JSON object");
  auto t = std::make_unique<ScriptedTransport>();
  for (const auto& [url, spec] : doc.items()) {
    if (spec.is_array()) {
      for (const auto& item : spec) t->add(url, outcome_from_json(item));
    } else {
      t->add(url, outcome_from_json(spec));
    }
  }
  return t;
}

HttpResponse ScriptedTransport::get(const HttpRequest& request) {
  Outcome outcome;
  std::size_t index;
  {
    std::lock_guard lock(mutex_);
    auto it = script_.find(request.url);
    if (it == script_.end()) {
      std::string bare = request.url.substr(0, request.url.find('?'));
      it = script_.find(bare);
    }
    bool known = it != script_.end() && !it->second.empty();
    if (known) {
      std::size_t& pos = cursor_[it->first];
      outcome = it->second[std::min(pos, it->second.size() - 1)];
      ++pos;
    } else {
      outcome.failure = "no route to host (unscripted URL)";
    }
    index = calls_.size();
    auto now = std::chrono::steady_clock::now();
    calls_.push_back(Call{request.url, request.headers, now, now});
    max_in_flight_ = std::max(max_in_flight_, ++in_flight_);
  }
  if (outcome.hold > Seconds::zero()) std::this_thread::sleep_for(outcome.hold);
  {
    std::lock_guard lock(mutex_);
    --in_flight_;
    calls_[index].finished = std::chrono::steady_clock::now();
  }
  if (!outcome.response) throw TransportError(outcome.failure);
  return *outcome.response;
}

std::vector<ScriptedTransport::Call> ScriptedTransport::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

int ScriptedTransport::max_in_flight() const {
  std::lock_guard lock(mutex_);
  return max_in_flight_;
}

}  // namespace kgmm::probes
