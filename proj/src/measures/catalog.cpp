#include "kgmm/measures/catalog.hpp"

#include <stdexcept>
#include <string>

namespace kgmm::measures {

namespace {

constexpr CurationModes kH{true, false};
constexpr CurationModes kM{false, true};
constexpr CurationModes kHM{true, true};

constexpr SourceSet kAuto{true, false};
constexpr SourceSet kReview{false, true};
constexpr SourceSet kBoth{true, true};

using enum MeasureId;
using D = Dimension;
using enum Priority;

// Column order: id, dimension, level, priority, modes, description, sources.
constexpr std::array<MeasureDefinition, kMeasureCount> kCatalog{{
    {SyntacticAccuracy, D::Accuracy, 1, Important, kHM,
     "Literal values follow the lexical rules of their datatypes.", kBoth},
    {Timeliness, D::Accuracy, 2, Essential, kH,
     "The graph records a recent modification or issue date.", kBoth},
    {Correctness, D::Accuracy, 2, Essential, kHM,
     "Statements respect the declared restrictions of their properties.", kBoth},
    {SemanticAccuracy, D::Accuracy, 2, Important, kHM,
     "Values represent the real-world facts they describe.", kBoth},
    {Trustworthiness, D::Completeness, 2, Essential, kH,
     "Reviewers judge the data correct, verifiable and believable.", kReview},
    {InstanceCompleteness, D::Completeness, 2, Important, kHM,
     "All real-world objects required for the task are present.", kBoth},
    {PropertyCompleteness, D::Completeness, 2, Important, kHM,
     "Instances carry values for the properties their class requires.", kBoth},
    {PopulationCompleteness, D::Completeness, 2, Important, kM,
     "The number of represented objects matches a reference population.", kAuto},
    {Linkability, D::Completeness, 5, Useful, kHM,
     "Entities are connected to external datasets.", kBoth},
    {IdentifierStability, D::Findability, 4, Important, kM,
     "Entities use persistent identifiers.", kAuto},
    {Responsiveness, D::Accessibility, 1, Essential, kHM,
     "The exploration interface loads in under the time limit.", kBoth},
    {Easiness, D::Accessibility, 1, Important, kH,
     "Data is easy to navigate and interpret; entities carry labels.", kBoth},
    {Queryability, D::Accessibility, 4, Important, kHM,
     "A SPARQL endpoint answers queries.", kBoth},
    {Dereferencability, D::Accessibility, 5, Useful, kM,
     "Entity IRIs resolve over HTTP to RDF documents.", kAuto},
    {Provenance, D::Interoperability, 2, Essential, kH,
     "Entities record who created them and when.", kBoth},
    {DataRepresentation, D::Interoperability, 3, Useful, kH,
     "Values of a property are represented in a consistent format.", kBoth},
    {Trackability, D::Interoperability, 4, Essential, kHM,
     "Entities link to the sources their data originates from.", kBoth},
    {License, D::Reusability, 1, Essential, kHM,
     "The dataset declares an open license in machine-readable form.", kBoth},
    {MeasureId::Reusability, D::Reusability, 3, Essential, kM,
     "License, dataset provenance and vocabulary reuse are in place.", kAuto},
    {Conciseness, D::Succinctness, 3, Essential, kHM,
     "No duplicated entities or schema terms.", kBoth},
}};

constexpr std::array<std::string_view, kMeasureCount> kNames{
    "SyntacticAccuracy",    "Timeliness",          "Correctness",      "SemanticAccuracy",
    "Trustworthiness",      "InstanceCompleteness", "PropertyCompleteness",
    "PopulationCompleteness", "Linkability",       "IdentifierStability", "Responsiveness",
    "Easiness",             "Queryability",        "Dereferencability", "Provenance",
    "DataRepresentation",   "Trackability",        "License",          "Reusability",
    "Conciseness",
};

static_assert([] {
  for (std::size_t i = 0; i < kCatalog.size(); ++i) {
    if (static_cast<std::size_t>(kCatalog[i].id) != i) return false;
  }
  return true;
}());

}  // namespace

std::span<const MeasureDefinition> catalog() { return kCatalog; }

const MeasureDefinition& lookup(MeasureId id) {
  return kCatalog.at(static_cast<std::size_t>(id));
}

std::array<MeasureId, kMeasureCount> all_measures() {
  std::array<MeasureId, kMeasureCount> out{};
  for (std::size_t i = 0; i < kMeasureCount; ++i) out[i] = static_cast<MeasureId>(i);
  return out;
}

std::string_view to_string(MeasureId id) { return kNames.at(static_cast<std::size_t>(id)); }

std::optional<MeasureId> measure_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<MeasureId>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Dimension d) {
  switch (d) {
    case D::Accuracy: return "Accuracy";
    case D::Completeness: return "Completeness";
    case D::Findability: return "Findability";
    case D::Accessibility: return "Accessibility";
    case D::Interoperability: return "Interoperability";
    case D::Reusability: return "Reusability";
    case D::Succinctness: return "Succinctness";
  }
  throw std::logic_error("bad dimension");
}

std::string_view to_string(Priority p) {
  switch (p) {
    case Essential: return "Essential";
    case Important: return "Important";
    case Useful: return "Useful";
  }
  throw std::logic_error("bad priority");
}

std::string_view stars(Priority p) {
  switch (p) {
    case Essential: return "***";
    case Important: return "**";
    case Useful: return "*";
  }
  throw std::logic_error("bad priority");
}

std::string_view mode_tag(CurationModes m) {
  if (m.human && m.machine) return "[H,M]";
  if (m.human) return "[H]";
  if (m.machine) return "[M]";
  return "[]";
}

std::string_view level_name(int level) {
  switch (level) {
    case 1: return "Published";
    case 2: return "Completeness";
    case 3: return "Representation";
    case 4: return "Stability";
    case 5: return "Linkability";
    default: return "";
  }
}

}  // namespace kgmm::measures
