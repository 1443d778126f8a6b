#include "kgmm/probes/probes.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cctype>
#include <exception>
#include <mutex>
#include <json.hpp>
#include <random>
#include <regex>
#include <set>
#include <thread>

namespace kgmm::probes {

void validate(const ProbeConfig& cfg) {
  if (cfg.responsiveness_limit <= Seconds::zero()) {
    throw std::invalid_argument("responsiveness_limit must be positive");
  }
  if (cfg.request_timeout <= Seconds::zero()) {
    throw std::invalid_argument("request_timeout must be positive");
  }
  if (cfg.max_redirects < 0) throw std::invalid_argument("max_redirects must be >= 0");
  if (cfg.parallelism < 1) throw std::invalid_argument("parallelism must be >= 1");
  if (cfg.rate_limit_per_host < 0) throw std::invalid_argument("rate limit must be >= 0");
}

std::string strip_media_type(std::string_view content_type) {
  std::string_view s = content_type.substr(0, content_type.find(';'));
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

namespace {

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 303 || status == 307 || status == 308;
}

bool is_http(const std::string& url) {
  auto parts = split_url(url);
  return parts && (parts->scheme == "http" || parts->scheme == "https");
}

struct Fetched {
  std::optional<HttpResponse> final;
  int redirects = 0;
  Seconds elapsed{0.0};
  std::vector<std::string> chain;
  std::string error;
};

HttpResponse get_with_retry(Transport& transport, const HttpRequest& request) {
  try {
    return transport.get(request);
  } catch (const TransportError&) {
    return transport.get(request);
  }
}

Fetched fetch(const std::string& url, const std::string& accept, const ProbeConfig& cfg,
              Transport& transport) {
  Fetched f;
  std::set<std::string> visited;
  std::string current = url;
  for (;;) {
    f.chain.push_back(current);
    visited.insert(current);
    HttpRequest request{current, {{"Accept", accept}, {"User-Agent", cfg.user_agent}},
                        cfg.request_timeout};
    HttpResponse response;
    try {
      response = get_with_retry(transport, request);
    } catch (const TransportError& e) {
      f.error = std::string("unreachable: ") + e.what();
      return f;
    }
    f.elapsed += response.elapsed;
    if (response.elapsed > cfg.request_timeout) {
      f.error = "unreachable: request timed out";
      return f;
    }
    if (is_redirect(response.status) && !response.location.empty()) {
      std::string next = resolve_location(current, response.location);
      if (visited.contains(next)) {
        f.final = response;
        f.error = "redirect loop back to " + next;
        return f;
      }
      if (f.redirects >= cfg.max_redirects) {
        f.final = response;
        f.error = "redirect limit of " + std::to_string(cfg.max_redirects) + " exceeded";
        return f;
      }
      ++f.redirects;
      current = next;
      continue;
    }
    f.final = response;
    return f;
  }
}

std::string accept_header(const std::vector<std::string>& types) {
  std::string out;
  double q = 1.0;
  for (const auto& t : types) {
    if (!out.empty()) out += ", ";
    out += t;
    if (q < 1.0) {
      char buf[16];
      std::snprintf(buf, sizeof buf, ";q=%.1f", q);
      out += buf;
    }
    q = std::max(0.1, q - 0.1);
  }
  return out;
}

std::string describe_chain(const std::vector<std::string>& chain) {
  std::string out;
  for (const auto& url : chain) {
    if (!out.empty()) out += " -> ";
    out += url;
  }
  return out;
}

}  // namespace

ResponsivenessResult probe_responsiveness(const std::string& url, const ProbeConfig& cfg,
                                          Transport& transport) {
  ResponsivenessResult out;
  out.http.iri = url;
  Fetched f = fetch(url, "text/html, */*;q=0.8", cfg, transport);
  out.http.chain = f.chain;
  out.http.redirects = f.redirects;
  out.http.elapsed = f.elapsed;
  out.http.error = f.error;
  if (f.final) {
    out.http.status = f.final->status;
    out.http.content_type = strip_media_type(f.final->content_type);
    out.http.body = f.final->body.empty() && out.http.content_type.empty() ? BodyClass::None
                                                                            : BodyClass::NonRdf;
  }
  bool ok_status = f.error.empty() && out.http.status && *out.http.status >= 200 &&
                   *out.http.status < 300;
  out.pass = ok_status && f.elapsed < cfg.responsiveness_limit;
  return out;
}

HttpProbeResult probe_dereference(const std::string& iri, const ProbeConfig& cfg,
                                  Transport& transport) {
  HttpProbeResult r;
  r.iri = iri;
  if (!is_http(iri)) {
    r.error = "not an HTTP IRI";
    return r;
  }
  Fetched f = fetch(iri, accept_header(cfg.accept_types), cfg, transport);
  r.chain = f.chain;
  r.redirects = f.redirects;
  r.elapsed = f.elapsed;
  r.error = f.error;
  if (!f.error.empty() && f.redirects > 0) r.error += " (" + describe_chain(f.chain) + ")";
  if (!f.final) return r;
  r.status = f.final->status;
  r.content_type = strip_media_type(f.final->content_type);
  bool rdf_type = std::find(cfg.accept_types.begin(), cfg.accept_types.end(), r.content_type) !=
                  cfg.accept_types.end();
  if (rdf_type) r.body = BodyClass::Rdf;
  else if (!r.content_type.empty() || !f.final->body.empty()) r.body = BodyClass::NonRdf;
  r.dereferenceable = f.error.empty() && r.status == 200 && rdf_type;
  return r;
}

std::vector<HttpProbeResult> probe_dereference_all(std::span<const std::string> iris,
                                                   const ProbeConfig& cfg, Transport& transport) {
  std::vector<HttpProbeResult> results(iris.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < iris.size(); i = next++) {
      try {
        results[i] = probe_dereference(iris[i], cfg, transport);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(1, cfg.parallelism)), iris.size());
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

namespace {

std::optional<bool> parse_ask_body(const std::string& content_type, const std::string& body) {
  if (content_type.find("xml") == std::string::npos) {
    auto doc = nlohmann::json::parse(body, nullptr, false);
    if (!doc.is_discarded() && doc.is_object() && doc.contains("boolean") &&
        doc.at("boolean").is_boolean()) {
      return doc.at("boolean").get<bool>();
    }
  }
  static const std::regex kXmlBoolean(R"(<boolean>\s*(true|false)\s*</boolean>)");
  std::smatch m;
  if (std::regex_search(body, m, kXmlBoolean)) return m[1] == "true";
  return std::nullopt;
}

}  // namespace

SparqlProbeResult probe_sparql(const std::string& endpoint, const ProbeConfig& cfg,
                               Transport& transport) {
  SparqlProbeResult r;
  r.endpoint = endpoint;
  if (!is_http(endpoint)) {
    r.error = "endpoint is not an HTTP URL";
    return r;
  }
  std::string url = endpoint + (endpoint.find('?') == std::string::npos ? "?" : "&") +
                    "query=" + url_encode(kAskQuery);
  Fetched f = fetch(url,
                    "application/sparql-results+json, application/sparql-results+xml;q=0.9",
                    cfg, transport);
  r.elapsed = f.elapsed;
  if (!f.error.empty()) {
    r.error = f.error;
    return r;
  }
  if (f.final->status != 200) {
    r.error = "HTTP status " + std::to_string(f.final->status);
    return r;
  }
  auto answer = parse_ask_body(strip_media_type(f.final->content_type), f.final->body);
  if (!answer) {
    r.error = "malformed ASK response";
    return r;
  }
  r.responded = true;
  r.ask_answer = answer;
  return r;
}

std::vector<rdf::Iri> sample_iris(const rdf::Graph& g, const rdf::NamespaceConfig& ns,
                                  std::size_t sample_size, std::uint64_t seed) {
  std::vector<rdf::Iri> pool = rdf::entities(g, ns);
  if (pool.size() <= sample_size) return pool;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < sample_size; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(sample_size), pool.end());
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace kgmm::probes
