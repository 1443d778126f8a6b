#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgmm/measures/catalog.hpp"
#include "kgmm/probes/probes.hpp"
#include "kgmm/rdf/graph.hpp"

namespace kgmm::measures {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ValueKind { Any, Literal, Object };

struct PropertySpec {
  rdf::Iri predicate;
  ValueKind value = ValueKind::Any;
  bool single_valued = false;
  bool required = true;
};

struct ClassProfile {
  rdf::Iri cls;
  std::vector<PropertySpec> properties;
};

struct PidPattern {
  std::string name;
  std::string pattern;  // ECMAScript regex matched against the whole IRI
};

std::vector<PidPattern> default_pid_patterns();

struct AssessmentConfig {
  std::optional<rdf::Iri> dataset_iri;
  std::vector<std::string> internal_namespaces;
  std::vector<std::string> stable_namespaces;
  rdf::NamespaceConfig namespaces;
  std::vector<ClassProfile> property_profile;
  std::optional<std::uint64_t> reference_population;
  std::optional<std::vector<rdf::Iri>> reference_entities;
  double max_age_days = 365.0;
  std::map<MeasureId, double> thresholds;
  double human_agreement_threshold = 0.5;
  std::vector<PidPattern> pid_patterns = default_pid_patterns();
  std::size_t sample_size = 25;
  std::uint64_t rng_seed = 0;
  // ISO-8601 instant that Timeliness measures age against; the wall clock
  // when absent.
  std::optional<std::string> reference_time;

  std::optional<std::string> interface_url;
  std::optional<std::string> sparql_endpoint;
  bool offline = false;
  probes::ProbeConfig probes;
};

// Throws ConfigError on a violated invariant.
void validate(const AssessmentConfig& cfg);

// Threshold in effect for a measure: explicit override, else 1.0 for the
// presence checks, the agreement threshold for review-only measures, 0.8
// for ratios.
double threshold_for(MeasureId id, const AssessmentConfig& cfg);

// Reads the assessment keys of a configuration document; unknown keys are
// ignored so the same document can carry other sections.
AssessmentConfig assessment_config_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const AssessmentConfig& cfg);

}  // namespace kgmm::measures
