#include "kgmm/service/engine.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "kgmm/probes/probes.hpp"
#include "kgmm/rdf/ntriples.hpp"
#include "kgmm/rdf/turtle.hpp"

namespace kgmm::service {

using measures::ConfigError;
using nlohmann::json;

EngineConfig engine_config_from_json(const json& doc) {
  EngineConfig cfg;
  cfg.assessment = measures::assessment_config_from_json(doc);
  try {
    if (doc.contains("review")) {
      const json& r = doc.at("review");
      if (r.contains("questions")) {
        cfg.questions.clear();
        for (const json& q : r.at("questions")) cfg.questions.push_back(review::question_from_json(q));
      }
    }
    review::validate(cfg.questions);
    if (doc.contains("maturity")) cfg.maturity = maturity::maturity_policy_from_json(doc.at("maturity"));
    if (doc.contains("service")) {
      const json& s = doc.at("service");
      cfg.service.host = s.value("host", cfg.service.host);
      cfg.service.port = s.value("port", cfg.service.port);
      cfg.service.data_dir = s.value("data_dir", cfg.service.data_dir);
      cfg.service.token_file = s.value("token_file", cfg.service.token_file);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("configuration: ") + e.what());
  }
  return cfg;
}

EngineConfig load_engine_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read configuration file " + path);
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("configuration file " + path + " is not valid JSON");
  return engine_config_from_json(doc);
}

json to_json(const EngineConfig& cfg) {
  json doc = measures::to_json(cfg.assessment);
  json qs = json::array();
  for (const auto& q : cfg.questions) qs.push_back(review::to_json(q));
  doc["review"] = {{"questions", qs}};
  doc["maturity"] = maturity::to_json(cfg.maturity);
  return doc;
}

void apply_environment(ServiceSettings& settings) {
  if (const char* v = std::getenv("KGMM_DATA_DIR"); v && *v) settings.data_dir = v;
  if (const char* v = std::getenv("KGMM_HOST"); v && *v) settings.host = v;
  if (const char* v = std::getenv("KGMM_PORT"); v && *v) settings.port = std::atoi(v);
}

rdf::Graph load_graph(const std::string& source, probes::Transport* transport) {
  if (source.starts_with("http://") || source.starts_with("https://")) {
    if (!transport) throw std::runtime_error("no HTTP transport to fetch " + source);
    probes::HttpRequest req{source,
                            {{"Accept", "application/n-triples, text/turtle;q=0.9"},
                             {"User-Agent", "kgmm/0.3.0"}},
                            probes::Seconds{30.0}};
    probes::HttpResponse resp = transport->get(req);
    if (resp.status != 200) {
      throw std::runtime_error("fetching " + source + " returned HTTP " + std::to_string(resp.status));
    }
    if (probes::strip_media_type(resp.content_type) == "text/turtle") {
      return rdf::parse_turtle_subset(resp.body, source);
    }
    return rdf::parse_ntriples(resp.body);
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read graph file " + source);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::filesystem::path p(source);
  if (p.extension() == ".ttl") {
    std::string base = "file://" + std::filesystem::absolute(p).string();
    return rdf::parse_turtle_subset(buf.str(), base);
  }
  return rdf::parse_ntriples(buf.str());
}

measures::ProbeOutcomes run_probes(const rdf::Graph& g, const measures::AssessmentConfig& cfg,
                                   probes::Transport* transport) {
  measures::ProbeOutcomes out;
  if (cfg.offline) {
    out.skipped = "probes disabled (offline)";
    return out;
  }
  if (!transport) {
    out.skipped = "no HTTP transport available";
    return out;
  }
  std::unique_ptr<probes::RateLimitedTransport> paced;
  probes::Transport* t = transport;
  if (cfg.probes.rate_limit_per_host > 0) {
    paced = std::make_unique<probes::RateLimitedTransport>(*transport, cfg.probes.rate_limit_per_host);
    t = paced.get();
  }
  if (cfg.interface_url) out.responsiveness = probes::probe_responsiveness(*cfg.interface_url, cfg.probes, *t);
  if (cfg.sparql_endpoint) out.sparql = probes::probe_sparql(*cfg.sparql_endpoint, cfg.probes, *t);
  std::vector<std::string> sample;
  for (const auto& iri : probes::sample_iris(g, cfg.namespaces, cfg.sample_size, cfg.rng_seed)) {
    sample.push_back(iri.str());
  }
  out.dereference = probes::probe_dereference_all(sample, cfg.probes, *t);
  return out;
}

AssessmentOutcome assess(const rdf::Graph& g, const EngineConfig& cfg, const std::string& target,
                         std::span<const review::Review> reviews,
                         const review::ReviewPolicy& policy, probes::Transport* transport) {
  measures::AssessmentConfig acfg = cfg.assessment;
  acfg.human_agreement_threshold = policy.agreement_threshold;
  double now = measures::resolve_now(acfg);

  AssessmentOutcome out;
  out.aggregate = review::aggregate_reviews(target, reviews, policy, cfg.questions);
  measures::HumanInputs human = review::human_inputs(out.aggregate, cfg.questions);
  measures::ProbeOutcomes probe_outcomes = run_probes(g, acfg, transport);
  out.results = measures::evaluate_all(g, acfg, now, human, probe_outcomes);
  out.report = maturity::maturity_report(target, out.results, out.aggregate, review::tally_links(reviews),
                                         cfg.maturity);
  return out;
}

json to_json(const measures::MeasureResult& r) {
  json evidence = json::array();
  for (const auto& e : r.evidence) {
    json item = {{"kind", measures::to_string(e.kind)}, {"message", e.message}};
    item["subject"] = e.subject ? json(rdf::to_ntriples(*e.subject)) : json(nullptr);
    evidence.push_back(std::move(item));
  }
  json sources = json::array();
  if (r.sources_used.automated) sources.push_back("automated");
  if (r.sources_used.human) sources.push_back("human_review");
  return {{"measure", measures::to_string(r.id)},
          {"status", measures::to_string(r.status)},
          {"score", {{"exact", r.score.to_string()}, {"value", r.score.to_double()}}},
          {"threshold", r.threshold},
          {"pass", r.pass},
          {"sources_used", sources},
          {"evidence", evidence}};
}

std::string report_document(const maturity::MaturityReport& report) {
  return maturity::to_json(report).dump(2) + "\n";
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace kgmm::service
