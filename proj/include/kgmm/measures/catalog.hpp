#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace kgmm::measures {

enum class MeasureId {
  SyntacticAccuracy,
  Timeliness,
  Correctness,
  SemanticAccuracy,
  Trustworthiness,
  InstanceCompleteness,
  PropertyCompleteness,
  PopulationCompleteness,
  Linkability,
  IdentifierStability,
  Responsiveness,
  Easiness,
  Queryability,
  Dereferencability,
  Provenance,
  DataRepresentation,
  Trackability,
  License,
  Reusability,
  Conciseness,
};
inline constexpr std::size_t kMeasureCount = 20;

enum class Dimension {
  Accuracy,
  Completeness,
  Findability,
  Accessibility,
  Interoperability,
  Reusability,
  Succinctness,
};
inline constexpr std::size_t kDimensionCount = 7;

// Declared in ascending order so that Essential > Important > Useful.
enum class Priority { Useful, Important, Essential };

struct CurationModes {
  bool human = false;
  bool machine = false;
  bool operator==(const CurationModes&) const = default;
};

struct SourceSet {
  bool automated = false;
  bool human = false;
  bool operator==(const SourceSet&) const = default;
};

struct MeasureDefinition {
  MeasureId id;
  Dimension dimension;
  int level;
  Priority priority;
  CurationModes modes;
  std::string_view description;
  SourceSet sources;
};

// The twenty measures in declaration order of MeasureId.
std::span<const MeasureDefinition> catalog();
const MeasureDefinition& lookup(MeasureId id);
std::array<MeasureId, kMeasureCount> all_measures();

std::string_view to_string(MeasureId id);
std::string_view to_string(Dimension d);
std::string_view to_string(Priority p);
std::optional<MeasureId> measure_from_string(std::string_view name);

// "***", "**" or "*".
std::string_view stars(Priority p);
// "[H]", "[M]" or "[H,M]".
std::string_view mode_tag(CurationModes m);

std::string_view level_name(int level);

}  // namespace kgmm::measures
