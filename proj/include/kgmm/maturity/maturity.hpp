#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgmm/measures/catalog.hpp"
#include "kgmm/measures/result.hpp"
#include "kgmm/review/review.hpp"

namespace kgmm::maturity {

using measures::MeasureDefinition;
using measures::MeasureId;
using measures::MeasureResult;

inline constexpr int kMaxLevel = 5;

struct MaturityPolicy {
  double important_fraction = 0.5;
  bool cumulative = true;
  // Level 5 holds only Useful measures; when set it needs one of them to pass.
  bool strict_level5 = false;
  bool treat_insufficient_as_fail = true;
  bool exclude_not_applicable = true;

  bool operator==(const MaturityPolicy&) const = default;
};

class MaturityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct MeasurePass {
  MeasureId id;
  bool pass = false;
  bool operator==(const MeasurePass&) const = default;
};

struct LevelStatus {
  int level = 0;
  std::vector<MeasurePass> essential;
  std::vector<MeasurePass> important;
  std::vector<MeasurePass> useful;
  // Measures left out of the rule (NotApplicable, or Insufficient when the
  // policy does not count it as a failure).
  std::vector<MeasureId> excluded;
  bool passed = false;
  std::vector<MeasureId> blocking;

  bool operator==(const LevelStatus&) const = default;
};

// Applies the pass rule to one level. `results` may hold results for other
// levels too; a missing result for a measure of this level is an error.
LevelStatus level_pass(int level, std::span<const MeasureResult> results,
                       const MaturityPolicy& policy,
                       std::span<const MeasureDefinition> catalog = measures::catalog());

std::vector<LevelStatus> level_statuses(std::span<const MeasureResult> results,
                                        const MaturityPolicy& policy,
                                        std::span<const MeasureDefinition> catalog = measures::catalog());

int achieved_level(std::span<const LevelStatus> levels, const MaturityPolicy& policy);
int achieved_level(std::span<const MeasureResult> results, const MaturityPolicy& policy,
                   std::span<const MeasureDefinition> catalog = measures::catalog());

struct Action {
  MeasureId id;
  int level = 0;
  std::string guidance;
  std::string evidence;
  bool operator==(const Action&) const = default;
};

struct MaturityReport {
  std::string target;
  int achieved_level = 0;
  std::vector<LevelStatus> levels;
  std::vector<Action> recommended_actions;
  std::size_t review_count = 0;
  int min_reviews = 3;
  std::vector<review::LinkSuggestion> recommended_links;

  bool operator==(const MaturityReport&) const = default;
};

// Fixed advice for a measure that blocks a level.
std::string_view guidance(MeasureId id);

MaturityReport maturity_report(const std::string& target, std::span<const MeasureResult> results,
                               const review::ReviewAggregate& agg,
                               std::vector<review::LinkSuggestion> links,
                               const MaturityPolicy& policy);

nlohmann::json to_json(const MaturityReport& report);
std::string to_text(const MaturityReport& report);
std::string badge(const MaturityReport& report);

nlohmann::json to_json(const MaturityPolicy& policy);
MaturityPolicy maturity_policy_from_json(const nlohmann::json& doc);

}  // namespace kgmm::maturity
