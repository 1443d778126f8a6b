#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgmm/measures/catalog.hpp"
#include "kgmm/measures/fraction.hpp"
#include "kgmm/rdf/term.hpp"

namespace kgmm::measures {

enum class Status { Assessed, Insufficient, NotApplicable };

enum class EvidenceKind { OffendingTriple, MissingProperty, ProbeOutcome, DuplicateCluster, ReviewSummary };

struct Evidence {
  EvidenceKind kind;
  std::optional<rdf::Term> subject;
  std::string message;

  bool operator==(const Evidence&) const = default;
};

struct MeasureResult {
  MeasureId id{};
  Fraction score;
  bool pass = false;
  SourceSet sources_used;
  std::vector<Evidence> evidence;
  Status status = Status::Insufficient;
  double threshold = 0.0;

  bool operator==(const MeasureResult&) const = default;
};

// Output of the machine route of one measure before it meets the review route.
struct AutomatedScore {
  Status status = Status::Assessed;
  Fraction score;
  std::vector<Evidence> evidence;

  static AutomatedScore assessed(Fraction score, std::vector<Evidence> evidence = {}) {
    return {Status::Assessed, score, std::move(evidence)};
  }
  static AutomatedScore not_applicable(std::string why);
  static AutomatedScore insufficient(std::string why);
};

// The review route as seen by one measure. `configured` means at least one
// review question maps to the measure in this run.
struct HumanInput {
  bool configured = false;
  std::optional<Fraction> score;
  std::vector<Evidence> evidence;
};

std::string_view to_string(Status s);
std::string_view to_string(EvidenceKind k);
std::optional<Status> status_from_string(std::string_view s);
std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s);

// Score is the minimum over the available sources. The result passes iff that
// minimum reaches the threshold and every configured source delivered a
// score. A configured source without a score makes the result Insufficient.
// With nothing available the status is NotApplicable when the machine route
// said so, Insufficient otherwise.
MeasureResult combine_sources(const MeasureDefinition& def,
                              const std::optional<AutomatedScore>& automated,
                              const HumanInput& human, double threshold);

}  // namespace kgmm::measures
