#include "kgmm/measures/config.hpp"

#include <regex>

namespace kgmm::measures {

using nlohmann::json;

std::vector<PidPattern> default_pid_patterns() {
  return {
      {"DOI", R"(^(https?://(dx\.)?doi\.org/|doi:|info:doi/)10\.[0-9]{4,9}/\S+$)"},
      {"ORCID", R"(^https?://orcid\.org/[0-9]{4}-[0-9]{4}-[0-9]{4}-[0-9]{3}[0-9X]$)"},
      {"ISBN", R"(^(urn:isbn:|https?://isbnsearch\.org/isbn/)(97[89]-?)?([0-9]-?){9}[0-9X]$)"},
      {"W3ID", R"(^https?://w3id\.org/.+$)"},
  };
}

void validate(const AssessmentConfig& cfg) {
  for (const auto& [id, t] : cfg.thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw ConfigError("threshold for " + std::string(to_string(id)) + " outside [0,1]");
    }
  }
  if (!(cfg.human_agreement_threshold >= 0.0 && cfg.human_agreement_threshold <= 1.0)) {
    throw ConfigError("human_agreement_threshold outside [0,1]");
  }
  if (cfg.sample_size < 1) throw ConfigError("sample_size must be >= 1");
  if (!(cfg.max_age_days > 0)) throw ConfigError("max_age_days must be positive");
  if (cfg.reference_population && *cfg.reference_population == 0) {
    throw ConfigError("reference_population must be positive");
  }
  for (const auto& p : cfg.pid_patterns) {
    try {
      std::regex re(p.pattern);
    } catch (const std::regex_error& e) {
      throw ConfigError("pid pattern '" + p.name + "' is not a valid regex: " + e.what());
    }
  }
  try {
    probes::validate(cfg.probes);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("probes: ") + e.what());
  }
}

double threshold_for(MeasureId id, const AssessmentConfig& cfg) {
  if (auto it = cfg.thresholds.find(id); it != cfg.thresholds.end()) return it->second;
  switch (id) {
    case MeasureId::License:
    case MeasureId::Responsiveness:
    case MeasureId::Queryability:
    case MeasureId::Timeliness:
      return 1.0;
    case MeasureId::Trustworthiness:
      return cfg.human_agreement_threshold;
    default:
      return 0.8;
  }
}

namespace {

template <typename T>
T field(const json& doc, const char* key) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

rdf::Iri to_iri(const std::string& s, const char* key) {
  if (!rdf::Iri::is_valid(s)) {
    throw ConfigError(std::string("config key '") + key + "': not an absolute IRI: " + s);
  }
  return rdf::Iri(s);
}

ValueKind value_kind(const std::string& s) {
  if (s == "any") return ValueKind::Any;
  if (s == "literal") return ValueKind::Literal;
  if (s == "object") return ValueKind::Object;
  throw ConfigError("property value kind must be any, literal or object, got '" + s + "'");
}

std::string_view to_string(ValueKind k) {
  switch (k) {
    case ValueKind::Any: return "any";
    case ValueKind::Literal: return "literal";
    case ValueKind::Object: return "object";
  }
  return "any";
}

}  // namespace

AssessmentConfig assessment_config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration document must be an object");
  AssessmentConfig cfg;
  if (doc.contains("dataset_iri")) {
    cfg.dataset_iri = to_iri(field<std::string>(doc, "dataset_iri"), "dataset_iri");
  }
  if (doc.contains("internal_namespaces")) {
    cfg.internal_namespaces = field<std::vector<std::string>>(doc, "internal_namespaces");
  }
  if (doc.contains("stable_namespaces")) {
    cfg.stable_namespaces = field<std::vector<std::string>>(doc, "stable_namespaces");
  }
  if (doc.contains("schema_namespaces")) {
    cfg.namespaces.schema_namespaces = field<std::vector<std::string>>(doc, "schema_namespaces");
  }
  if (doc.contains("property_profile")) {
    const json& profile = doc.at("property_profile");
    if (!profile.is_object()) throw ConfigError("property_profile must be an object");
    for (const auto& [cls, specs] : profile.items()) {
      ClassProfile cp{to_iri(cls, "property_profile"), {}};
      if (!specs.is_array()) throw ConfigError("property_profile entries must be arrays");
      for (const json& s : specs) {
        PropertySpec ps{to_iri(field<std::string>(s, "predicate"), "predicate")};
        if (s.contains("value")) ps.value = value_kind(field<std::string>(s, "value"));
        if (s.contains("single_valued")) ps.single_valued = field<bool>(s, "single_valued");
        if (s.contains("required")) ps.required = field<bool>(s, "required");
        cp.properties.push_back(std::move(ps));
      }
      cfg.property_profile.push_back(std::move(cp));
    }
  }
  if (doc.contains("reference_population")) {
    cfg.reference_population = field<std::uint64_t>(doc, "reference_population");
  }
  if (doc.contains("reference_entities")) {
    std::vector<rdf::Iri> refs;
    for (const auto& s : field<std::vector<std::string>>(doc, "reference_entities")) {
      refs.push_back(to_iri(s, "reference_entities"));
    }
    cfg.reference_entities = std::move(refs);
  }
  if (doc.contains("max_age_days")) cfg.max_age_days = field<double>(doc, "max_age_days");
  if (doc.contains("thresholds")) {
    for (const auto& [name, value] : doc.at("thresholds").items()) {
      auto id = measure_from_string(name);
      if (!id) throw ConfigError("thresholds: unknown measure '" + name + "'");
      if (!value.is_number()) throw ConfigError("thresholds: value for " + name + " not numeric");
      cfg.thresholds[*id] = value.get<double>();
    }
  }
  if (doc.contains("human_agreement_threshold")) {
    cfg.human_agreement_threshold = field<double>(doc, "human_agreement_threshold");
  }
  if (doc.contains("pid_patterns")) {
    cfg.pid_patterns.clear();
    for (const json& p : doc.at("pid_patterns")) {
      cfg.pid_patterns.push_back({field<std::string>(p, "name"), field<std::string>(p, "pattern")});
    }
  }
  if (doc.contains("sample_size")) {
    auto n = field<std::int64_t>(doc, "sample_size");
    if (n < 1) throw ConfigError("sample_size must be >= 1");
    cfg.sample_size = static_cast<std::size_t>(n);
  }
  if (doc.contains("rng_seed")) cfg.rng_seed = field<std::uint64_t>(doc, "rng_seed");
  if (doc.contains("reference_time")) cfg.reference_time = field<std::string>(doc, "reference_time");
  if (doc.contains("interface_url")) cfg.interface_url = field<std::string>(doc, "interface_url");
  if (doc.contains("sparql_endpoint")) {
    cfg.sparql_endpoint = field<std::string>(doc, "sparql_endpoint");
  }
  if (doc.contains("offline")) cfg.offline = field<bool>(doc, "offline");
  if (doc.contains("probes")) {
    const json& p = doc.at("probes");
    auto& pc = cfg.probes;
    if (p.contains("responsiveness_limit_seconds")) {
      pc.responsiveness_limit = probes::Seconds{field<double>(p, "responsiveness_limit_seconds")};
    }
    if (p.contains("request_timeout_seconds")) {
      pc.request_timeout = probes::Seconds{field<double>(p, "request_timeout_seconds")};
    }
    if (p.contains("max_redirects")) pc.max_redirects = field<int>(p, "max_redirects");
    if (p.contains("accept_types")) pc.accept_types = field<std::vector<std::string>>(p, "accept_types");
    if (p.contains("parallelism")) pc.parallelism = field<int>(p, "parallelism");
    if (p.contains("rate_limit_per_host")) pc.rate_limit_per_host = field<double>(p, "rate_limit_per_host");
    if (p.contains("user_agent")) pc.user_agent = field<std::string>(p, "user_agent");
  }
  validate(cfg);
  return cfg;
}

json to_json(const AssessmentConfig& cfg) {
  json doc;
  if (cfg.dataset_iri) doc["dataset_iri"] = cfg.dataset_iri->str();
  doc["internal_namespaces"] = cfg.internal_namespaces;
  doc["stable_namespaces"] = cfg.stable_namespaces;
  doc["schema_namespaces"] = cfg.namespaces.schema_namespaces;
  json profile = json::object();
  for (const auto& cp : cfg.property_profile) {
    json specs = json::array();
    for (const auto& ps : cp.properties) {
      specs.push_back({{"predicate", ps.predicate.str()},
                       {"value", to_string(ps.value)},
                       {"single_valued", ps.single_valued},
                       {"required", ps.required}});
    }
    profile[cp.cls.str()] = specs;
  }
  doc["property_profile"] = profile;
  if (cfg.reference_population) doc["reference_population"] = *cfg.reference_population;
  if (cfg.reference_entities) {
    json refs = json::array();
    for (const auto& r : *cfg.reference_entities) refs.push_back(r.str());
    doc["reference_entities"] = refs;
  }
  doc["max_age_days"] = cfg.max_age_days;
  json thresholds = json::object();
  for (const auto& [id, t] : cfg.thresholds) thresholds[std::string(to_string(id))] = t;
  doc["thresholds"] = thresholds;
  doc["human_agreement_threshold"] = cfg.human_agreement_threshold;
  json pids = json::array();
  for (const auto& p : cfg.pid_patterns) pids.push_back({{"name", p.name}, {"pattern", p.pattern}});
  doc["pid_patterns"] = pids;
  doc["sample_size"] = cfg.sample_size;
  doc["rng_seed"] = cfg.rng_seed;
  if (cfg.reference_time) doc["reference_time"] = *cfg.reference_time;
  if (cfg.interface_url) doc["interface_url"] = *cfg.interface_url;
  if (cfg.sparql_endpoint) doc["sparql_endpoint"] = *cfg.sparql_endpoint;
  doc["offline"] = cfg.offline;
  doc["probes"] = {
      {"responsiveness_limit_seconds", cfg.probes.responsiveness_limit.count()},
      {"request_timeout_seconds", cfg.probes.request_timeout.count()},
      {"max_redirects", cfg.probes.max_redirects},
      {"accept_types", cfg.probes.accept_types},
      {"parallelism", cfg.probes.parallelism},
      {"rate_limit_per_host", cfg.probes.rate_limit_per_host},
      {"user_agent", cfg.probes.user_agent},
  };
  return doc;
}

}  // namespace kgmm::measures
