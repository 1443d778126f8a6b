#include "kgmm/review/review.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "kgmm/rdf/term.hpp"

namespace kgmm::review {

using nlohmann::json;

std::vector<ReviewQuestion> default_questions() {
  using enum MeasureId;
  return {
      {"linkability", "Are the entities linked to suitable external datasets or ontologies?",
       {Linkability}},
      {"data_representation",
       "Are values given in a consistent format, with suitable units and languages?",
       {DataRepresentation}},
      {"instance_completeness", "Are all the entities you would expect for this topic present?",
       {InstanceCompleteness}},
      {"property_completeness", "Do the entities carry values for the properties you would expect?",
       {PropertyCompleteness}},
      {"correctness", "Are the stated values free of errors?", {Correctness}},
      {"trustworthiness", "Can the data be verified against the sources it cites?",
       {Trustworthiness}},
      {"semantic_accuracy", "Do the values describe the real-world facts correctly?",
       {SemanticAccuracy}},
      {"easiness", "Is the data easy to read and navigate?", {Easiness}},
  };
}

void validate(std::span<const ReviewQuestion> questions) {
  std::set<std::string> seen;
  for (const auto& q : questions) {
    if (q.id.empty()) throw std::invalid_argument("review question with empty id");
    if (!seen.insert(q.id).second) throw std::invalid_argument("duplicate review question " + q.id);
    if (q.measure_ids.empty()) {
      throw std::invalid_argument("review question " + q.id + " maps to no measure");
    }
  }
}

std::string ReviewStore::submit(const Review& r, const Directory& dir,
                                std::span<const ReviewQuestion> questions) {
  using K = ReviewError::Kind;
  if (!dir.is_registered(r.reviewer)) {
    throw ReviewError(K::UnregisteredReviewer, "reviewer '" + r.reviewer + "' is not registered");
  }
  auto author = dir.author_of(r.target);
  if (!author) throw ReviewError(K::UnknownTarget, "unknown target '" + r.target + "'");
  if (*author == r.reviewer) {
    throw ReviewError(K::SelfReview, "authors cannot review their own target");
  }
  if (r.answers.empty()) throw ReviewError(K::InvalidReview, "review has no answers");
  for (const auto& [qid, answer] : r.answers) {
    bool known = std::any_of(questions.begin(), questions.end(),
                             [&](const ReviewQuestion& q) { return q.id == qid; });
    if (!known) throw ReviewError(K::InvalidReview, "unknown review question '" + qid + "'");
  }
  for (const auto& link : r.suggested_links) {
    if (!rdf::Iri::is_valid(link)) {
      throw ReviewError(K::InvalidReview, "suggested link is not an absolute IRI: " + link);
    }
  }
  std::lock_guard lock(mutex_);
  auto key = std::make_pair(r.target, r.reviewer);
  auto it = by_target_reviewer_.find(key);
  if (it != by_target_reviewer_.end()) {
    it->second.review = r;
    return it->second.id;
  }
  std::string id = "rv-" + std::to_string(next_id_++);
  by_target_reviewer_.emplace(key, StoredReview{id, r});
  return id;
}

void ReviewStore::restore(const StoredReview& stored) {
  std::lock_guard lock(mutex_);
  by_target_reviewer_[{stored.review.target, stored.review.reviewer}] = stored;
  if (stored.id.starts_with("rv-")) {
    try {
      next_id_ = std::max(next_id_, std::stoul(stored.id.substr(3)) + 1);
    } catch (const std::exception&) {
    }
  }
}

std::vector<Review> ReviewStore::reviews_for(const std::string& target) const {
  std::lock_guard lock(mutex_);
  std::vector<Review> out;
  for (auto it = by_target_reviewer_.lower_bound({target, ""});
       it != by_target_reviewer_.end() && it->first.first == target; ++it) {
    out.push_back(it->second.review);
  }
  return out;
}

std::vector<StoredReview> ReviewStore::all() const {
  std::lock_guard lock(mutex_);
  std::vector<StoredReview> out;
  for (const auto& [key, stored] : by_target_reviewer_) out.push_back(stored);
  return out;
}

ReviewPolicy PolicyStore::set_min_reviews(const std::string& field, int n) {
  ReviewPolicy p = get(field);
  p.min_reviews = n;
  return set(p);
}

ReviewPolicy PolicyStore::set(const ReviewPolicy& policy) {
  using K = ReviewError::Kind;
  if (policy.field.empty()) throw ReviewError(K::InvalidPolicy, "policy field must not be empty");
  if (policy.min_reviews < 1) throw ReviewError(K::InvalidPolicy, "min_reviews must be >= 1");
  if (!(policy.agreement_threshold >= 0.0 && policy.agreement_threshold <= 1.0)) {
    throw ReviewError(K::InvalidPolicy, "agreement_threshold outside [0,1]");
  }
  std::lock_guard lock(mutex_);
  policies_[policy.field] = policy;
  return policy;
}

ReviewPolicy PolicyStore::get(const std::string& field) const {
  std::lock_guard lock(mutex_);
  auto it = policies_.find(field);
  if (it != policies_.end()) return it->second;
  ReviewPolicy p;
  p.field = field;
  return p;
}

std::vector<ReviewPolicy> PolicyStore::all() const {
  std::lock_guard lock(mutex_);
  std::vector<ReviewPolicy> out;
  for (const auto& [field, p] : policies_) out.push_back(p);
  return out;
}

ReviewAggregate aggregate_reviews(const std::string& target, std::span<const Review> reviews,
                                  const ReviewPolicy& policy,
                                  std::span<const ReviewQuestion> questions) {
  ReviewAggregate agg;
  agg.target = target;
  agg.min_reviews = policy.min_reviews;
  std::set<std::string> reviewers;
  for (const Review& r : reviews) reviewers.insert(r.reviewer);
  agg.review_count = reviewers.size();
  agg.quorum_met = agg.review_count >= static_cast<std::size_t>(policy.min_reviews);
  for (const ReviewQuestion& q : questions) {
    QuestionTally t;
    t.id = q.id;
    for (const Review& r : reviews) {
      auto it = r.answers.find(q.id);
      if (it == r.answers.end()) continue;
      ++t.total;
      if (it->second) ++t.agree;
    }
    if (t.total > 0) t.ratio = Fraction::ratio(t.agree, t.total);
    agg.questions.push_back(std::move(t));
  }
  return agg;
}

ReviewAggregate aggregate(const ReviewStore& store, const Directory& dir, const std::string& target,
                          const ReviewPolicy& policy, std::span<const ReviewQuestion> questions) {
  if (!dir.author_of(target)) {
    throw ReviewError(ReviewError::Kind::UnknownTarget, "unknown target '" + target + "'");
  }
  auto reviews = store.reviews_for(target);
  return aggregate_reviews(target, reviews, policy, questions);
}

HumanSignal human_signal(const ReviewAggregate& agg, std::span<const ReviewQuestion> questions) {
  HumanSignal s;
  s.quorum_met = agg.quorum_met;
  std::array<Fraction, measures::kMeasureCount> sum{};
  std::array<std::int64_t, measures::kMeasureCount> n{};
  for (const ReviewQuestion& q : questions) {
    auto tally = std::find_if(agg.questions.begin(), agg.questions.end(),
                              [&](const QuestionTally& t) { return t.id == q.id; });
    for (MeasureId id : q.measure_ids) {
      auto i = static_cast<std::size_t>(id);
      s.mapped[i] = true;
      if (tally != agg.questions.end() && tally->ratio) {
        sum[i] = sum[i] + *tally->ratio;
        ++n[i];
      }
    }
  }
  if (!agg.quorum_met) return s;
  for (std::size_t i = 0; i < measures::kMeasureCount; ++i) {
    if (n[i] > 0) s.score[i] = sum[i] / Fraction(n[i]);
  }
  return s;
}

measures::HumanInputs human_inputs(const ReviewAggregate& agg,
                                   std::span<const ReviewQuestion> questions) {
  HumanSignal s = human_signal(agg, questions);
  measures::HumanInputs out;
  for (std::size_t i = 0; i < measures::kMeasureCount; ++i) {
    if (!s.mapped[i]) continue;
    auto& h = out[i];
    h.configured = true;
    h.score = s.score[i];
    std::string msg;
    if (!agg.quorum_met) {
      msg = "reviews so far " + std::to_string(agg.review_count) + " of " +
            std::to_string(agg.min_reviews) + " required";
    } else if (!s.score[i]) {
      msg = "no reviewer answered the questions for this measure";
    } else {
      msg = "review agreement " + s.score[i]->to_string() + " over " +
            std::to_string(agg.review_count) + " reviews";
    }
    h.evidence.push_back({measures::EvidenceKind::ReviewSummary, std::nullopt, msg});
  }
  return out;
}

std::vector<LinkSuggestion> tally_links(std::span<const Review> reviews) {
  std::map<std::string, std::set<std::string>> by_link;
  for (const Review& r : reviews) {
    for (const auto& link : r.suggested_links) by_link[link].insert(r.reviewer);
  }
  std::vector<LinkSuggestion> out;
  for (const auto& [iri, who] : by_link) out.push_back({iri, who.size()});
  std::stable_sort(out.begin(), out.end(), [](const LinkSuggestion& a, const LinkSuggestion& b) {
    return a.count > b.count;
  });
  return out;
}

FeedbackReport feedback_report(const ReviewStore& store, const Directory& dir,
                               const std::string& target, const ReviewPolicy& policy,
                               std::span<const ReviewQuestion> questions) {
  ReviewAggregate agg = aggregate(store, dir, target, policy, questions);
  auto reviews = store.reviews_for(target);
  FeedbackReport rep;
  rep.target = target;
  rep.review_count = agg.review_count;
  rep.min_reviews = agg.min_reviews;
  rep.quorum_met = agg.quorum_met;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const auto& t = agg.questions[i];
    rep.questions.push_back(
        {questions[i].id, questions[i].text, t.agree, t.total - t.agree, t.total, t.ratio});
  }
  rep.suggested_links = tally_links(reviews);
  if (!agg.quorum_met) {
    rep.notice = std::to_string(agg.min_reviews - static_cast<int>(agg.review_count)) +
                 " more review(s) required before review answers count (" +
                 std::to_string(agg.review_count) + " of " + std::to_string(agg.min_reviews) + ")";
  }
  return rep;
}

namespace {

json fraction_json(const std::optional<Fraction>& f) {
  if (!f) return nullptr;
  return {{"exact", f->to_string()}, {"value", f->to_double()}};
}

}  // namespace

json to_json(const ReviewQuestion& q) {
  json ids = json::array();
  for (MeasureId id : q.measure_ids) ids.push_back(std::string(measures::to_string(id)));
  return {{"id", q.id}, {"text", q.text}, {"kind", "binary"}, {"measure_ids", ids}};
}

ReviewQuestion question_from_json(const json& doc) {
  ReviewQuestion q;
  q.id = doc.at("id").get<std::string>();
  q.text = doc.value("text", "");
  if (doc.contains("kind") && doc.at("kind") != "binary") {
    throw std::invalid_argument("review question " + q.id + ": only binary questions are supported");
  }
  for (const auto& name : doc.at("measure_ids")) {
    auto id = measures::measure_from_string(name.get<std::string>());
    if (!id) throw std::invalid_argument("review question " + q.id + ": unknown measure " + name.dump());
    q.measure_ids.push_back(*id);
  }
  return q;
}

json to_json(const Review& r) {
  return {{"reviewer", r.reviewer},
          {"target", r.target},
          {"answers", r.answers},
          {"suggested_links", r.suggested_links},
          {"submitted_at", r.submitted_at}};
}

Review review_from_json(const json& doc) {
  Review r;
  r.reviewer = doc.value("reviewer", "");
  r.target = doc.value("target", "");
  if (doc.contains("answers")) {
    for (const auto& [k, v] : doc.at("answers").items()) {
      if (!v.is_boolean()) throw std::invalid_argument("answer to " + k + " must be true or false");
      r.answers[k] = v.get<bool>();
    }
  }
  if (doc.contains("suggested_links")) {
    r.suggested_links = doc.at("suggested_links").get<std::vector<std::string>>();
  }
  r.submitted_at = doc.value("submitted_at", "");
  return r;
}

json to_json(const ReviewPolicy& p) {
  return {{"field", p.field},
          {"min_reviews", p.min_reviews},
          {"agreement_threshold", p.agreement_threshold}};
}

ReviewPolicy policy_from_json(const json& doc) {
  ReviewPolicy p;
  p.field = doc.value("field", p.field);
  p.min_reviews = doc.value("min_reviews", p.min_reviews);
  p.agreement_threshold = doc.value("agreement_threshold", p.agreement_threshold);
  return p;
}

json to_json(const ReviewAggregate& agg) {
  json qs = json::array();
  for (const auto& t : agg.questions) {
    qs.push_back({{"id", t.id}, {"agree", t.agree}, {"total", t.total}, {"ratio", fraction_json(t.ratio)}});
  }
  return {{"target", agg.target},
          {"review_count", agg.review_count},
          {"min_reviews", agg.min_reviews},
          {"quorum_met", agg.quorum_met},
          {"questions", qs}};
}

json to_json(const FeedbackReport& rep) {
  json qs = json::array();
  for (const auto& q : rep.questions) {
    qs.push_back({{"id", q.id},
                  {"text", q.text},
                  {"agree", q.agree},
                  {"disagree", q.disagree},
                  {"total", q.total},
                  {"ratio", fraction_json(q.ratio)}});
  }
  json links = json::array();
  for (const auto& l : rep.suggested_links) links.push_back({{"iri", l.iri}, {"count", l.count}});
  return {{"target", rep.target},
          {"review_count", rep.review_count},
          {"min_reviews", rep.min_reviews},
          {"quorum_met", rep.quorum_met},
          {"questions", qs},
          {"suggested_links", links},
          {"notice", rep.notice}};
}

std::map<std::string, bool> parse_answers(std::string_view text) {
  std::map<std::string, bool> out;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("answer '" + std::string(item) + "' is not of the form id=yes|no");
    }
    std::string value(item.substr(eq + 1));
    std::transform(value.begin(), value.end(), value.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    bool b;
    if (value == "yes" || value == "y" || value == "true" || value == "1") {
      b = true;
    } else if (value == "no" || value == "n" || value == "false" || value == "0") {
      b = false;
    } else {
      throw std::invalid_argument("answer value '" + value + "' is not yes or no");
    }
    out[std::string(item.substr(0, eq))] = b;
  }
  if (out.empty()) throw std::invalid_argument("no answers given");
  return out;
}

}  // namespace kgmm::review
