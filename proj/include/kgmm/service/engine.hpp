#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kgmm/maturity/maturity.hpp"
#include "kgmm/measures/config.hpp"
#include "kgmm/measures/evaluators.hpp"
#include "kgmm/probes/transport.hpp"
#include "kgmm/rdf/graph.hpp"
#include "kgmm/review/review.hpp"

namespace kgmm::service {

struct ServiceSettings {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir = "kgmm-data";
  std::string token_file;  // optional "account<TAB>role<TAB>token" lines
};

// Everything one assessment run needs besides the graph and the reviews.
// Read from a single JSON document: assessment keys at top level plus the
// "review", "maturity" and "service" sections.
struct EngineConfig {
  measures::AssessmentConfig assessment;
  std::vector<review::ReviewQuestion> questions = review::default_questions();
  maturity::MaturityPolicy maturity;
  ServiceSettings service;
};

EngineConfig engine_config_from_json(const nlohmann::json& doc);
// Throws measures::ConfigError for unreadable or invalid documents.
EngineConfig load_engine_config(const std::string& path);
nlohmann::json to_json(const EngineConfig& cfg);

// Applies KGMM_DATA_DIR, KGMM_HOST and KGMM_PORT when set.
void apply_environment(ServiceSettings& settings);

// Reads a graph from a file (.nt as N-Triples, .ttl as Turtle, anything
// else tried as N-Triples) or, for http(s) sources, through the transport.
rdf::Graph load_graph(const std::string& source, probes::Transport* transport);

// Network checks for one run. Without a transport, or with offline set,
// nothing is contacted.
measures::ProbeOutcomes run_probes(const rdf::Graph& g, const measures::AssessmentConfig& cfg,
                                   probes::Transport* transport);

struct AssessmentOutcome {
  std::vector<measures::MeasureResult> results;
  maturity::MaturityReport report;
  review::ReviewAggregate aggregate;
};

// Evaluates all measures with the given reviews and builds the report. The
// review policy's agreement threshold overrides the configured one.
AssessmentOutcome assess(const rdf::Graph& g, const EngineConfig& cfg, const std::string& target,
                         std::span<const review::Review> reviews,
                         const review::ReviewPolicy& policy, probes::Transport* transport);

nlohmann::json to_json(const measures::MeasureResult& r);

// Serialized report as persisted and served; identical for CLI and service.
std::string report_document(const maturity::MaturityReport& report);

std::string iso8601_now();

}  // namespace kgmm::service
