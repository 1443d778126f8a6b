#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kgmm/probes/transport.hpp"
#include "kgmm/rdf/graph.hpp"

namespace kgmm::probes {

struct ProbeConfig {
  Seconds responsiveness_limit{2.0};
  Seconds request_timeout{10.0};
  int max_redirects = 5;
  std::vector<std::string> accept_types{"text/turtle", "application/n-triples",
                                        "application/rdf+xml", "application/ld+json"};
  int parallelism = 4;
  // Requests per second per host; 0 disables pacing.
  double rate_limit_per_host = 20.0;
  std::string user_agent = "kgmm/0.3.0";
};

// Throws std::invalid_argument when an invariant does not hold.
void validate(const ProbeConfig& cfg);

enum class BodyClass { Rdf, NonRdf, None };

struct HttpProbeResult {
  std::string iri;
  std::optional<int> status;  // absent when no HTTP response arrived
  std::string content_type;   // parameters stripped, lower-case
  Seconds elapsed{0.0};
  int redirects = 0;
  BodyClass body = BodyClass::None;
  bool dereferenceable = false;
  // Empty on a clean HTTP exchange; otherwise why the probe gave up.
  std::string error;
  std::vector<std::string> chain;  // every URL requested, in order
};

struct ResponsivenessResult {
  HttpProbeResult http;
  bool pass = false;
};

struct SparqlProbeResult {
  std::string endpoint;
  bool responded = false;
  std::optional<bool> ask_answer;
  Seconds elapsed{0.0};
  std::string error;
};

std::string strip_media_type(std::string_view content_type);

ResponsivenessResult probe_responsiveness(const std::string& url, const ProbeConfig& cfg,
                                          Transport& transport);

// Non-HTTP IRIs come back not dereferenceable without touching the network.
HttpProbeResult probe_dereference(const std::string& iri, const ProbeConfig& cfg,
                                  Transport& transport);

// Runs probe_dereference over all IRIs with at most cfg.parallelism in
// flight. Results follow input order.
std::vector<HttpProbeResult> probe_dereference_all(std::span<const std::string> iris,
                                                   const ProbeConfig& cfg, Transport& transport);

inline constexpr std::string_view kAskQuery = "ASK { ?s ?p ?o }";

SparqlProbeResult probe_sparql(const std::string& endpoint, const ProbeConfig& cfg,
                               Transport& transport);

// Deterministic sample of min(sample_size, |entities|) entity IRIs, returned
// in canonical order.
std::vector<rdf::Iri> sample_iris(const rdf::Graph& g, const rdf::NamespaceConfig& ns,
                                  std::size_t sample_size, std::uint64_t seed);

}  // namespace kgmm::probes
