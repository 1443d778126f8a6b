#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kgmm/measures/config.hpp"
#include "kgmm/measures/result.hpp"
#include "kgmm/probes/probes.hpp"
#include "kgmm/rdf/graph.hpp"

namespace kgmm::measures {

// Outcomes of the network checks for one run. An absent member means the
// probe did not run; `skipped` then says why.
struct ProbeOutcomes {
  std::optional<probes::ResponsivenessResult> responsiveness;
  std::optional<probes::SparqlProbeResult> sparql;
  std::optional<std::vector<probes::HttpProbeResult>> dereference;
  std::string skipped;
};

using HumanInputs = std::array<HumanInput, kMeasureCount>;

// Case-folded, whitespace-collapsed form used to compare labels.
std::string normalize_label(std::string_view label);

bool matches_pid(const rdf::Iri& iri, const AssessmentConfig& cfg);

// Dataset description nodes: cfg.dataset_iri when set, else every node typed
// void:Dataset, dcat:Dataset or schema:Dataset.
std::vector<rdf::Term> dataset_nodes(const rdf::Graph& g, const AssessmentConfig& cfg);

// Machine route of each measure. nullopt means the measure has no automated
// part in this run (for example, nothing configured to compare against).
namespace automated {

std::optional<AutomatedScore> syntactic_accuracy(const rdf::Graph& g);
std::optional<AutomatedScore> license(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> timeliness(const rdf::Graph& g, const AssessmentConfig& cfg,
                                         double now_epoch_seconds);
std::optional<AutomatedScore> correctness(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> semantic_accuracy(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> instance_completeness(const rdf::Graph& g,
                                                    const AssessmentConfig& cfg);
std::optional<AutomatedScore> property_completeness(const rdf::Graph& g,
                                                    const AssessmentConfig& cfg);
std::optional<AutomatedScore> population_completeness(const rdf::Graph& g,
                                                      const AssessmentConfig& cfg);
std::optional<AutomatedScore> provenance(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> reusability(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> conciseness(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> data_representation(const rdf::Graph& g);
std::optional<AutomatedScore> trackability(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> identifier_stability(const rdf::Graph& g,
                                                   const AssessmentConfig& cfg);
std::optional<AutomatedScore> linkability(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> easiness(const rdf::Graph& g, const AssessmentConfig& cfg);
std::optional<AutomatedScore> responsiveness(const ProbeOutcomes& probes);
std::optional<AutomatedScore> queryability(const ProbeOutcomes& probes);
std::optional<AutomatedScore> dereferencability(const ProbeOutcomes& probes,
                                                const AssessmentConfig& cfg);

// Extensional and intensional halves of conciseness, exposed for tests.
Fraction extensional_conciseness(const rdf::Graph& g, const AssessmentConfig& cfg,
                                 std::vector<Evidence>* evidence = nullptr);
Fraction intensional_conciseness(const rdf::Graph& g, std::vector<Evidence>* evidence = nullptr);

}  // namespace automated

// Full verdicts, automated part combined with the review route.
MeasureResult eval_syntactic_accuracy(const rdf::Graph& g, const AssessmentConfig& cfg,
                                      const HumanInput& human = {});
MeasureResult eval_license(const rdf::Graph& g, const AssessmentConfig& cfg);
MeasureResult eval_timeliness(const rdf::Graph& g, double now_epoch_seconds,
                              const AssessmentConfig& cfg, const HumanInput& human = {});
MeasureResult eval_correctness(const rdf::Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human = {});
MeasureResult eval_semantic_accuracy(const rdf::Graph& g, const AssessmentConfig& cfg,
                                     const HumanInput& human = {});
MeasureResult eval_trustworthiness(const AssessmentConfig& cfg, const HumanInput& human);
MeasureResult eval_instance_completeness(const rdf::Graph& g, const AssessmentConfig& cfg,
                                         const HumanInput& human = {});
MeasureResult eval_property_completeness(const rdf::Graph& g, const AssessmentConfig& cfg,
                                         const HumanInput& human = {});
MeasureResult eval_population_completeness(const rdf::Graph& g, const AssessmentConfig& cfg);
MeasureResult eval_provenance(const rdf::Graph& g, const AssessmentConfig& cfg,
                              const HumanInput& human = {});
MeasureResult eval_reusability(const rdf::Graph& g, const AssessmentConfig& cfg);
MeasureResult eval_conciseness(const rdf::Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human = {});
MeasureResult eval_data_representation(const rdf::Graph& g, const AssessmentConfig& cfg,
                                       const HumanInput& human = {});
MeasureResult eval_trackability(const rdf::Graph& g, const AssessmentConfig& cfg,
                                const HumanInput& human = {});
MeasureResult eval_identifier_stability(const rdf::Graph& g, const AssessmentConfig& cfg);
MeasureResult eval_linkability(const rdf::Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human = {});
MeasureResult eval_easiness(const rdf::Graph& g, const AssessmentConfig& cfg,
                            const HumanInput& human = {});
MeasureResult eval_responsiveness(const ProbeOutcomes& probes, const AssessmentConfig& cfg,
                                  const HumanInput& human = {});
MeasureResult eval_queryability(const ProbeOutcomes& probes, const AssessmentConfig& cfg,
                                const HumanInput& human = {});
MeasureResult eval_dereferencability(const ProbeOutcomes& probes, const AssessmentConfig& cfg);

// All twenty results in MeasureId order.
std::vector<MeasureResult> evaluate_all(const rdf::Graph& g, const AssessmentConfig& cfg,
                                        double now_epoch_seconds, const HumanInputs& human,
                                        const ProbeOutcomes& probes);

// cfg.reference_time when set (throws ConfigError if unparseable), else the
// wall clock.
double resolve_now(const AssessmentConfig& cfg);

}  // namespace kgmm::measures
