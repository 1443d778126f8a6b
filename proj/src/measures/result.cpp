#include "kgmm/measures/result.hpp"

#include <algorithm>

namespace kgmm::measures {

AutomatedScore AutomatedScore::not_applicable(std::string why) {
  return {Status::NotApplicable, Fraction{}, {Evidence{EvidenceKind::MissingProperty, {}, std::move(why)}}};
}

AutomatedScore AutomatedScore::insufficient(std::string why) {
  return {Status::Insufficient, Fraction{}, {Evidence{EvidenceKind::ProbeOutcome, {}, std::move(why)}}};
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::Assessed: return "Assessed";
    case Status::Insufficient: return "Insufficient";
    case Status::NotApplicable: return "NotApplicable";
  }
  return "";
}

std::string_view to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::OffendingTriple: return "offending_triple";
    case EvidenceKind::MissingProperty: return "missing_property";
    case EvidenceKind::ProbeOutcome: return "probe_outcome";
    case EvidenceKind::DuplicateCluster: return "duplicate_cluster";
    case EvidenceKind::ReviewSummary: return "review_summary";
  }
  return "";
}

std::optional<Status> status_from_string(std::string_view s) {
  for (Status v : {Status::Assessed, Status::Insufficient, Status::NotApplicable}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

std::optional<EvidenceKind> evidence_kind_from_string(std::string_view s) {
  for (EvidenceKind v : {EvidenceKind::OffendingTriple, EvidenceKind::MissingProperty,
                         EvidenceKind::ProbeOutcome, EvidenceKind::DuplicateCluster,
                         EvidenceKind::ReviewSummary}) {
    if (to_string(v) == s) return v;
  }
  return std::nullopt;
}

MeasureResult combine_sources(const MeasureDefinition& def,
                              const std::optional<AutomatedScore>& automated,
                              const HumanInput& human, double threshold) {
  MeasureResult r;
  r.id = def.id;
  r.threshold = threshold;

  std::optional<Fraction> lowest;
  bool missing = false;
  bool not_applicable = false;
  auto take = [&](const Fraction& s) { lowest = lowest ? std::min(*lowest, s) : s; };

  if (def.sources.automated && automated) {
    r.evidence.insert(r.evidence.end(), automated->evidence.begin(), automated->evidence.end());
    switch (automated->status) {
      case Status::Assessed:
        take(automated->score);
        r.sources_used.automated = true;
        break;
      case Status::Insufficient:
        missing = true;
        break;
      case Status::NotApplicable:
        not_applicable = true;
        break;
    }
  }
  if (def.sources.human && human.configured) {
    r.evidence.insert(r.evidence.end(), human.evidence.begin(), human.evidence.end());
    if (human.score) {
      take(*human.score);
      r.sources_used.human = true;
    } else {
      missing = true;
    }
  }

  r.score = lowest.value_or(Fraction{});
  if (missing) {
    r.status = Status::Insufficient;
  } else if (!lowest) {
    r.status = not_applicable ? Status::NotApplicable : Status::Insufficient;
  } else {
    r.status = Status::Assessed;
    r.pass = r.score >= Fraction::from_decimal(threshold);
  }
  return r;
}

}  // namespace kgmm::measures
