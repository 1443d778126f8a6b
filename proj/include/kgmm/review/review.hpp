#pragma once

#include <array>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kgmm/measures/catalog.hpp"
#include "kgmm/measures/evaluators.hpp"
#include "kgmm/measures/fraction.hpp"

namespace kgmm::review {

using measures::Fraction;
using measures::MeasureId;

// A yes/no question put to reviewers, mapped onto one or more measures.
struct ReviewQuestion {
  std::string id;
  std::string text;
  std::vector<MeasureId> measure_ids;

  bool operator==(const ReviewQuestion&) const = default;
};

// One question per human-reviewed measure.
std::vector<ReviewQuestion> default_questions();

// Throws std::invalid_argument on duplicate ids, empty ids or empty
// measure lists.
void validate(std::span<const ReviewQuestion> questions);

struct Review {
  std::string reviewer;
  std::string target;
  std::map<std::string, bool> answers;
  std::vector<std::string> suggested_links;
  std::string submitted_at;  // ISO-8601 UTC

  bool operator==(const Review&) const = default;
};

struct ReviewPolicy {
  std::string field = "default";
  int min_reviews = 3;
  double agreement_threshold = 0.5;

  bool operator==(const ReviewPolicy&) const = default;
};

class ReviewError : public std::runtime_error {
 public:
  enum class Kind { UnregisteredReviewer, UnknownTarget, SelfReview, InvalidReview, InvalidPolicy };
  ReviewError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// Who may review and who wrote what; supplied by the persistence layer.
class Directory {
 public:
  virtual ~Directory() = default;
  virtual bool is_registered(const std::string& account) const = 0;
  // Author of a target, nullopt when the target does not exist.
  virtual std::optional<std::string> author_of(const std::string& target) const = 0;
};

struct StoredReview {
  std::string id;
  Review review;
};

// Latest review per (reviewer, target). Safe for concurrent use.
class ReviewStore {
 public:
  // Validates and stores; resubmission by the same reviewer replaces the
  // earlier review and keeps its id.
  std::string submit(const Review& r, const Directory& dir, std::span<const ReviewQuestion> questions);
  // Re-inserts a persisted review without validation.
  void restore(const StoredReview& stored);
  // Latest reviews of a target ordered by reviewer.
  std::vector<Review> reviews_for(const std::string& target) const;
  std::vector<StoredReview> all() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, StoredReview> by_target_reviewer_;
  std::size_t next_id_ = 1;
};

class PolicyStore {
 public:
  // Throws ReviewError(InvalidPolicy) when n < 1.
  ReviewPolicy set_min_reviews(const std::string& field, int n);
  ReviewPolicy set(const ReviewPolicy& policy);
  // Stored policy or the default (min 3, threshold 0.5) for the field.
  ReviewPolicy get(const std::string& field) const;
  std::vector<ReviewPolicy> all() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::string, ReviewPolicy> policies_;
};

struct QuestionTally {
  std::string id;
  std::size_t agree = 0;
  std::size_t total = 0;
  std::optional<Fraction> ratio;  // agree/total when total > 0

  bool operator==(const QuestionTally&) const = default;
};

struct ReviewAggregate {
  std::string target;
  std::vector<QuestionTally> questions;  // configured order
  bool quorum_met = false;
  std::size_t review_count = 0;
  int min_reviews = 3;

  bool operator==(const ReviewAggregate&) const = default;
};

ReviewAggregate aggregate_reviews(const std::string& target, std::span<const Review> reviews,
                                  const ReviewPolicy& policy,
                                  std::span<const ReviewQuestion> questions);

// Throws ReviewError(UnknownTarget) when the directory does not know the target.
ReviewAggregate aggregate(const ReviewStore& store, const Directory& dir, const std::string& target,
                          const ReviewPolicy& policy, std::span<const ReviewQuestion> questions);

struct HumanSignal {
  bool quorum_met = false;
  std::array<bool, measures::kMeasureCount> mapped{};
  std::array<std::optional<Fraction>, measures::kMeasureCount> score;
};

// Per measure: mean ratio over its answered questions, only with quorum.
HumanSignal human_signal(const ReviewAggregate& agg, std::span<const ReviewQuestion> questions);

// The review route as the evaluators consume it, with a review-summary
// evidence entry per mapped measure.
measures::HumanInputs human_inputs(const ReviewAggregate& agg,
                                   std::span<const ReviewQuestion> questions);

struct LinkSuggestion {
  std::string iri;
  std::size_t count = 0;  // distinct reviewers suggesting it

  bool operator==(const LinkSuggestion&) const = default;
};

struct FeedbackReport {
  std::string target;
  std::size_t review_count = 0;
  int min_reviews = 3;
  bool quorum_met = false;
  struct Question {
    std::string id;
    std::string text;
    std::size_t agree = 0;
    std::size_t disagree = 0;
    std::size_t total = 0;
    std::optional<Fraction> ratio;
    bool operator==(const Question&) const = default;
  };
  std::vector<Question> questions;
  std::vector<LinkSuggestion> suggested_links;  // most suggested first
  std::string notice;

  bool operator==(const FeedbackReport&) const = default;
};

// Unique suggested links with the number of reviewers proposing each.
std::vector<LinkSuggestion> tally_links(std::span<const Review> reviews);

FeedbackReport feedback_report(const ReviewStore& store, const Directory& dir,
                               const std::string& target, const ReviewPolicy& policy,
                               std::span<const ReviewQuestion> questions);

nlohmann::json to_json(const ReviewQuestion& q);
ReviewQuestion question_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Review& r);
Review review_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ReviewPolicy& p);
ReviewPolicy policy_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const ReviewAggregate& agg);
nlohmann::json to_json(const FeedbackReport& report);

// "q1=yes,q2=no" (also true/false, y/n, 1/0). Throws std::invalid_argument.
std::map<std::string, bool> parse_answers(std::string_view text);

}  // namespace kgmm::review
