#include <gtest/gtest.h>

#include <random>

#include "kgmm/maturity/maturity.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kgmm;
using maturity::MaturityPolicy;
using measures::Fraction;
using measures::MeasureDefinition;
using measures::MeasureId;
using measures::MeasureResult;
using measures::Priority;
using measures::Status;

// Outcome of one measure as the rule sees it.
enum class Outcome { Pass, Fail, NotApplicable, Insufficient };

MeasureResult result(MeasureId id, Outcome o) {
  MeasureResult r;
  r.id = id;
  r.status = o == Outcome::NotApplicable ? Status::NotApplicable
             : o == Outcome::Insufficient ? Status::Insufficient
                                          : Status::Assessed;
  r.pass = o == Outcome::Pass;
  r.score = Fraction(o == Outcome::Pass ? 1 : 0);
  r.threshold = 0.8;
  if (o == Outcome::Fail) r.evidence.push_back({measures::EvidenceKind::MissingProperty, std::nullopt, "missing"});
  return r;
}

std::vector<MeasureResult> all_pass() {
  std::vector<MeasureResult> out;
  for (auto id : measures::all_measures()) out.push_back(result(id, Outcome::Pass));
  return out;
}

void set(std::vector<MeasureResult>& rs, MeasureId id, Outcome o) {
  rs[static_cast<std::size_t>(id)] = result(id, o);
}

std::vector<oracle::RuleEntry> entries_for(std::span<const MeasureDefinition> cat, int level,
                                           const std::map<MeasureId, Outcome>& outcomes,
                                           bool insufficient_fails = true) {
  std::vector<oracle::RuleEntry> out;
  for (const auto& d : cat) {
    if (d.level != level) continue;
    Outcome o = outcomes.at(d.id);
    if (o == Outcome::NotApplicable) continue;
    if (o == Outcome::Insufficient && !insufficient_fails) continue;
    out.push_back({d.priority, o == Outcome::Pass});
  }
  return out;
}

// Every combination of outcomes for the measures of one level, four ways
// each, checked against the rule oracle with and without strict level 5.
TEST(LevelRule, ExhaustiveAgainstOracle) {
  auto cat = measures::catalog();
  const Outcome kinds[] = {Outcome::Pass, Outcome::Fail, Outcome::NotApplicable, Outcome::Insufficient};
  std::size_t checked = 0;
  for (int level = 1; level <= 5; ++level) {
    std::vector<MeasureId> ids;
    for (const auto& d : cat) {
      if (d.level == level) ids.push_back(d.id);
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < ids.size(); ++i) combos *= 4;
    for (std::size_t c = 0; c < combos; ++c) {
      auto rs = all_pass();
      std::map<MeasureId, Outcome> outcomes;
      for (auto id : measures::all_measures()) outcomes[id] = Outcome::Pass;
      std::size_t code = c;
      for (auto id : ids) {
        outcomes[id] = kinds[code % 4];
        set(rs, id, kinds[code % 4]);
        code /= 4;
      }
      for (bool strict : {false, true}) {
        MaturityPolicy policy;
        policy.strict_level5 = strict;
        auto st = maturity::level_pass(level, rs, policy);
        bool want = oracle::rule_level_passes(entries_for(cat, level, outcomes), level, strict);
        ASSERT_EQ(st.passed, want) << "level " << level << " combo " << c << " strict " << strict;
        if (strict && level == 5 && st.useful.empty()) {
          // Nothing applicable can satisfy the strict clause, so the level
          // fails without a measure to blame.
          EXPECT_FALSE(st.passed);
          EXPECT_TRUE(st.blocking.empty());
        } else {
          EXPECT_EQ(st.blocking.empty(), st.passed);
        }
        ++checked;
      }
      MaturityPolicy lenient;
      lenient.treat_insufficient_as_fail = false;
      EXPECT_EQ(maturity::level_pass(level, rs, lenient).passed,
                oracle::rule_level_passes(entries_for(cat, level, outcomes, false), level, false));
    }
  }
  EXPECT_EQ(checked, 2u * (256 + 65536 + 64 + 64 + 16));
}

// Small catalog with every priority present so that all 2^8 pass/fail
// vectors can be run through the cumulative achieved-level computation.
std::vector<MeasureDefinition> mock_catalog() {
  auto def = [](MeasureId id, int level, Priority p) {
    return MeasureDefinition{id, measures::Dimension::Accuracy, level, p, {true, true}, "mock", {true, false}};
  };
  using enum MeasureId;
  return {def(SyntacticAccuracy, 1, Priority::Essential), def(Timeliness, 1, Priority::Important),
          def(Correctness, 2, Priority::Essential),       def(SemanticAccuracy, 2, Priority::Important),
          def(Trustworthiness, 2, Priority::Important),   def(InstanceCompleteness, 3, Priority::Important),
          def(PropertyCompleteness, 4, Priority::Essential), def(PopulationCompleteness, 5, Priority::Useful)};
}

TEST(AchievedLevel, AllVectorsOnMockCatalog) {
  auto cat = mock_catalog();
  for (bool strict : {false, true}) {
    for (unsigned mask = 0; mask < (1u << cat.size()); ++mask) {
      std::vector<MeasureResult> rs;
      std::map<MeasureId, Outcome> outcomes;
      for (std::size_t i = 0; i < cat.size(); ++i) {
        Outcome o = (mask >> i) & 1u ? Outcome::Pass : Outcome::Fail;
        rs.push_back(result(cat[i].id, o));
        outcomes[cat[i].id] = o;
      }
      std::vector<bool> level_ok;
      for (int level = 1; level <= 5; ++level) {
        level_ok.push_back(oracle::rule_level_passes(entries_for(cat, level, outcomes), level, strict));
      }
      MaturityPolicy policy;
      policy.strict_level5 = strict;
      ASSERT_EQ(maturity::achieved_level(rs, policy, cat), oracle::rule_achieved_level(level_ok))
          << "mask " << mask << " strict " << strict;
    }
  }
}

TEST(AchievedLevel, RandomFullCatalogAgainstOracle) {
  auto cat = measures::catalog();
  std::mt19937 rng(11);
  const Outcome kinds[] = {Outcome::Pass, Outcome::Fail, Outcome::NotApplicable, Outcome::Insufficient};
  for (int round = 0; round < 5000; ++round) {
    auto rs = all_pass();
    std::map<MeasureId, Outcome> outcomes;
    for (auto id : measures::all_measures()) {
      // Mostly passing so that the higher levels are reached often.
      Outcome o = rng() % 5 ? Outcome::Pass : kinds[rng() % 4];
      outcomes[id] = o;
      set(rs, id, o);
    }
    std::vector<bool> level_ok;
    for (int level = 1; level <= 5; ++level) {
      level_ok.push_back(oracle::rule_level_passes(entries_for(cat, level, outcomes), level, false));
    }
    ASSERT_EQ(maturity::achieved_level(rs, MaturityPolicy{}), oracle::rule_achieved_level(level_ok));
  }
}

// Turning one failing measure into a passing one never lowers the level.
TEST(AchievedLevel, MonotoneInPasses) {
  std::mt19937 rng(2024);
  int raised = 0;
  for (int round = 0; round < 1000; ++round) {
    auto rs = all_pass();
    for (auto id : measures::all_measures()) {
      if (rng() % 3 == 0) set(rs, id, Outcome::Fail);
    }
    MaturityPolicy policy;
    policy.strict_level5 = rng() % 2 == 0;
    int before = maturity::achieved_level(rs, policy);
    std::vector<MeasureId> failing;
    for (const auto& r : rs) {
      if (!r.pass) failing.push_back(r.id);
    }
    if (failing.empty()) continue;
    set(rs, failing[rng() % failing.size()], Outcome::Pass);
    int after = maturity::achieved_level(rs, policy);
    ASSERT_GE(after, before) << "round " << round;
    raised += after > before;
  }
  EXPECT_GT(raised, 0);
}

TEST(AchievedLevel, Examples) {
  MaturityPolicy policy;
  EXPECT_EQ(maturity::achieved_level(all_pass(), policy), 5);

  auto rs = all_pass();
  set(rs, MeasureId::License, Outcome::Fail);
  EXPECT_EQ(maturity::achieved_level(rs, policy), 0);

  // Level 2 has four Important measures: two passing is enough, one is not.
  rs = all_pass();
  set(rs, MeasureId::SemanticAccuracy, Outcome::Fail);
  set(rs, MeasureId::InstanceCompleteness, Outcome::Fail);
  EXPECT_EQ(maturity::achieved_level(rs, policy), 5);
  set(rs, MeasureId::PropertyCompleteness, Outcome::Fail);
  EXPECT_EQ(maturity::achieved_level(rs, policy), 1);

  // A failed level 3 caps the result even when 4 and 5 would pass.
  rs = all_pass();
  set(rs, MeasureId::Conciseness, Outcome::Fail);
  EXPECT_EQ(maturity::achieved_level(rs, policy), 2);
  MaturityPolicy loose;
  loose.cumulative = false;
  EXPECT_EQ(maturity::achieved_level(rs, loose), 5);

  // Level 5 holds only Useful measures and passes vacuously unless strict.
  rs = all_pass();
  set(rs, MeasureId::Linkability, Outcome::Fail);
  set(rs, MeasureId::Dereferencability, Outcome::Fail);
  EXPECT_EQ(maturity::achieved_level(rs, policy), 5);
  MaturityPolicy strict;
  strict.strict_level5 = true;
  EXPECT_EQ(maturity::achieved_level(rs, strict), 4);
  set(rs, MeasureId::Dereferencability, Outcome::Pass);
  EXPECT_EQ(maturity::achieved_level(rs, strict), 5);
}

TEST(LevelRule, ExclusionAndInsufficient) {
  MaturityPolicy policy;
  auto rs = all_pass();
  set(rs, MeasureId::License, Outcome::NotApplicable);
  auto st = maturity::level_pass(1, rs, policy);
  EXPECT_TRUE(st.passed);
  EXPECT_EQ(st.excluded, std::vector<MeasureId>{MeasureId::License});
  set(rs, MeasureId::License, Outcome::Insufficient);
  st = maturity::level_pass(1, rs, policy);
  EXPECT_FALSE(st.passed);
  EXPECT_EQ(st.blocking, std::vector<MeasureId>{MeasureId::License});
  policy.treat_insufficient_as_fail = false;
  EXPECT_TRUE(maturity::level_pass(1, rs, policy).passed);
  // Level 1 Important measures all excluded: vacuous pass.
  rs = all_pass();
  set(rs, MeasureId::SyntacticAccuracy, Outcome::NotApplicable);
  set(rs, MeasureId::Easiness, Outcome::NotApplicable);
  EXPECT_TRUE(maturity::level_pass(1, rs, MaturityPolicy{}).passed);
}

TEST(LevelRule, MissingResultIsAnError) {
  auto rs = all_pass();
  rs.erase(rs.begin() + static_cast<std::ptrdiff_t>(MeasureId::Conciseness));
  EXPECT_THROW(maturity::level_pass(3, rs, MaturityPolicy{}), maturity::MaturityError);
  EXPECT_NO_THROW(maturity::level_pass(2, rs, MaturityPolicy{}));
}

TEST(Report, ActionsForEveryBlockingMeasure) {
  auto rs = all_pass();
  set(rs, MeasureId::License, Outcome::Fail);
  set(rs, MeasureId::Queryability, Outcome::Fail);
  set(rs, MeasureId::IdentifierStability, Outcome::Insufficient);
  review::ReviewAggregate agg;
  agg.review_count = 2;
  agg.min_reviews = 3;
  auto rep = maturity::maturity_report("kg1", rs, agg, {{"http://www.wikidata.org/entity/Q42", 2}}, MaturityPolicy{});
  EXPECT_EQ(rep.achieved_level, 0);
  ASSERT_EQ(rep.levels.size(), 5u);
  std::size_t blocking = 0;
  for (const auto& st : rep.levels) blocking += st.blocking.size();
  ASSERT_EQ(rep.recommended_actions.size(), blocking);
  ASSERT_EQ(blocking, 3u);
  const auto& license = rep.recommended_actions[0];
  EXPECT_EQ(license.id, MeasureId::License);
  EXPECT_EQ(license.level, 1);
  EXPECT_NE(license.guidance.find("machine-readable license"), std::string::npos);
  EXPECT_NE(license.guidance.find("dcterms:license"), std::string::npos);
  EXPECT_EQ(license.evidence, "missing");
  EXPECT_EQ(rep.recommended_actions[1].id, MeasureId::IdentifierStability);
  EXPECT_EQ(rep.recommended_actions[1].evidence, "status Insufficient");
  for (auto id : measures::all_measures()) EXPECT_FALSE(maturity::guidance(id).empty());

  auto text = maturity::to_text(rep);
  EXPECT_EQ(text.rfind("Achieved maturity level: 0/5\n", 0), 0u);
  EXPECT_NE(text.find("Reviews: 2 of 3 required"), std::string::npos);
  EXPECT_NE(text.find("http://www.wikidata.org/entity/Q42 (2)"), std::string::npos);
  auto doc = maturity::to_json(rep);
  EXPECT_EQ(doc.at("achieved_level"), 0);
  EXPECT_EQ(doc.at("levels").size(), 5u);
  EXPECT_EQ(doc.at("levels")[3].at("blocking"), nlohmann::json::array({"IdentifierStability", "Queryability"}));
  EXPECT_EQ(maturity::badge(rep), "![KGMM maturity 0/5](https://img.shields.io/badge/KGMM-0%2F5-red)\n");
}

TEST(Report, EvidenceNamesTheSubject) {
  auto rs = all_pass();
  auto& r = rs[static_cast<std::size_t>(MeasureId::License)];
  r = result(MeasureId::License, Outcome::Fail);
  r.evidence = {{measures::EvidenceKind::OffendingTriple, rdf::Term{rdf::Iri("http://ex.org/ds")}, "license must be IRI"}};
  auto rep = maturity::maturity_report("kg1", rs, {}, {}, MaturityPolicy{});
  ASSERT_EQ(rep.recommended_actions.size(), 1u);
  EXPECT_EQ(rep.recommended_actions[0].evidence, "<http://ex.org/ds> license must be IRI");
}

TEST(Policy, JsonRoundTrip) {
  MaturityPolicy p;
  p.cumulative = false;
  p.strict_level5 = true;
  p.important_fraction = 0.75;
  EXPECT_EQ(maturity::maturity_policy_from_json(maturity::to_json(p)), p);
  EXPECT_THROW(maturity::maturity_policy_from_json({{"important_fraction", 2.0}}), std::invalid_argument);
}

}  // namespace
