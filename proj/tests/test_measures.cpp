#include <gtest/gtest.h>

#include <random>

#include "kgmm/measures/catalog.hpp"
#include "kgmm/measures/config.hpp"
#include "kgmm/measures/evaluators.hpp"
#include "kgmm/rdf/literal_validation.hpp"
#include "kgmm/rdf/ntriples.hpp"
#include "support/oracles.hpp"

namespace {

using namespace kgmm;
using measures::AutomatedScore;
using measures::Fraction;
using measures::HumanInput;
using measures::MeasureId;
using measures::Status;
using rdf::Iri;
using rdf::Literal;
using rdf::Term;
using rdf::Triple;

const std::string kEx = "http://ex.org/";
const std::string kXsd = "http://www.w3.org/2001/XMLSchema#";
const std::string kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const std::string kLabel = "http://www.w3.org/2000/01/rdf-schema#label";
const std::string kDct = "http://purl.org/dc/terms/";

Iri ex(const std::string& local) { return Iri(kEx + local); }
Literal typed(const std::string& lex, const std::string& dt) { return Literal(lex, Iri(kXsd + dt)); }
Triple type(const std::string& s, const std::string& cls) { return Triple(ex(s), Iri(kRdfType), ex(cls)); }

HumanInput human(Fraction score) { return {true, score, {}}; }
HumanInput human_pending() { return {true, std::nullopt, {}}; }

// --- catalog -------------------------------------------------------------------

TEST(Catalog, MatchesReferenceTable) {
  auto rows = oracle::catalog_table();
  ASSERT_EQ(rows.size(), 20u);
  auto cat = measures::catalog();
  ASSERT_EQ(cat.size(), 20u);
  for (const auto& row : rows) {
    SCOPED_TRACE(row.measure);
    auto id = measures::measure_from_string(row.measure);
    ASSERT_TRUE(id);
    const auto& def = measures::lookup(*id);
    EXPECT_EQ(measures::to_string(def.dimension), row.dimension);
    EXPECT_EQ(def.level, row.level);
    EXPECT_EQ(measures::stars(def.priority), row.stars);
    EXPECT_EQ(measures::mode_tag(def.modes), row.modes);
  }
}

TEST(Catalog, Partition) {
  std::map<int, int> by_level;
  std::map<measures::Priority, int> by_priority;
  std::set<measures::Dimension> dims;
  for (const auto& d : measures::catalog()) {
    ++by_level[d.level];
    ++by_priority[d.priority];
    dims.insert(d.dimension);
    EXPECT_FALSE(d.description.empty());
    EXPECT_TRUE(d.sources.automated || d.sources.human);
  }
  EXPECT_EQ(by_level, (std::map<int, int>{{1, 4}, {2, 8}, {3, 3}, {4, 3}, {5, 2}}));
  EXPECT_EQ(by_priority[measures::Priority::Essential], 9);
  EXPECT_EQ(by_priority[measures::Priority::Important], 8);
  EXPECT_EQ(by_priority[measures::Priority::Useful], 3);
  EXPECT_EQ(dims.size(), measures::kDimensionCount);
}

TEST(Catalog, Examples) {
  const auto& c = measures::lookup(MeasureId::Conciseness);
  EXPECT_EQ(c.dimension, measures::Dimension::Succinctness);
  EXPECT_EQ(c.level, 3);
  EXPECT_EQ(c.priority, measures::Priority::Essential);
  EXPECT_EQ(c.modes, (measures::CurationModes{true, true}));
  const auto& d = measures::lookup(MeasureId::Dereferencability);
  EXPECT_EQ(d.dimension, measures::Dimension::Accessibility);
  EXPECT_EQ(d.level, 5);
  EXPECT_EQ(d.priority, measures::Priority::Useful);
  EXPECT_EQ(d.modes, (measures::CurationModes{false, true}));
  EXPECT_GT(measures::Priority::Essential, measures::Priority::Important);
  EXPECT_GT(measures::Priority::Important, measures::Priority::Useful);
}

TEST(Catalog, NamesRoundTrip) {
  std::set<std::string_view> names;
  for (auto id : measures::all_measures()) {
    names.insert(measures::to_string(id));
    EXPECT_EQ(measures::measure_from_string(measures::to_string(id)), id);
  }
  EXPECT_EQ(names.size(), 20u);
  EXPECT_FALSE(measures::measure_from_string("Nope"));
}

// --- fraction ----------------------------------------------------------------------

TEST(Fraction, ExactArithmetic) {
  EXPECT_EQ(Fraction(2, 4), Fraction(1, 2));
  EXPECT_EQ(Fraction(1, 3) + Fraction(1, 6), Fraction(1, 2));
  EXPECT_EQ(Fraction(4, 5).to_string(), "4/5");
  EXPECT_LT(Fraction(2, 3), Fraction(3, 4));
  EXPECT_EQ(Fraction::from_decimal(0.8), Fraction(4, 5));
  EXPECT_EQ(Fraction::from_decimal(0.5), Fraction(1, 2));
  EXPECT_TRUE((Fraction(1, 3) * Fraction(3, 1)).exact());
}

// --- ratio measures against linear-scan oracles ------------------------------------

struct Check {
  std::string name;
  std::optional<AutomatedScore> got;
  std::optional<oracle::Expect> want;  // nullopt: no automated route
};

void expect_match(const Check& c, const std::string& fixture) {
  SCOPED_TRACE(fixture + " " + c.name);
  ASSERT_EQ(c.got.has_value(), c.want.has_value());
  if (!c.got) return;
  if (!c.want->score) {
    EXPECT_EQ(c.got->status, Status::NotApplicable);
    return;
  }
  ASSERT_EQ(c.got->status, Status::Assessed);
  EXPECT_TRUE(oracle::same(*c.want->score, c.got->score))
      << "got " << c.got->score.to_string() << " want " << oracle::str(*c.want->score);
  EXPECT_GE(c.got->score, Fraction(0));
  EXPECT_LE(c.got->score, Fraction(1));
}

std::vector<Check> all_checks(const oracle::FixtureCase& fc) {
  rdf::Graph g(fc.triples);
  const auto& cfg = fc.cfg;
  namespace a = measures::automated;
  return {
      {"SyntacticAccuracy", a::syntactic_accuracy(g), oracle::syntactic_accuracy(fc.triples)},
      {"Correctness", a::correctness(g, cfg), oracle::correctness(fc.triples, cfg)},
      {"SemanticAccuracy", a::semantic_accuracy(g, cfg), oracle::semantic_accuracy(fc.triples, cfg)},
      {"InstanceCompleteness", a::instance_completeness(g, cfg), oracle::instance_completeness(fc.triples, cfg)},
      {"PropertyCompleteness", a::property_completeness(g, cfg), oracle::property_completeness(fc.triples, cfg)},
      {"PopulationCompleteness", a::population_completeness(g, cfg), oracle::population_completeness(fc.triples, cfg)},
      {"Provenance", a::provenance(g, cfg), oracle::provenance(fc.triples, cfg)},
      {"Reusability", a::reusability(g, cfg), oracle::reusability(fc.triples, cfg)},
      {"Conciseness", a::conciseness(g, cfg), oracle::conciseness(fc.triples, cfg)},
      {"DataRepresentation", a::data_representation(g), oracle::data_representation(fc.triples)},
      {"Trackability", a::trackability(g, cfg), oracle::trackability(fc.triples, cfg)},
      {"IdentifierStability", a::identifier_stability(g, cfg), oracle::identifier_stability(fc.triples, cfg)},
      {"Linkability", a::linkability(g, cfg), oracle::linkability(fc.triples, cfg)},
      {"Easiness", a::easiness(g, cfg), oracle::easiness(fc.triples, cfg)},
  };
}

TEST(RatioOracles, TwentyFixtureGraphs) {
  std::map<std::string, std::set<std::string>> distinct_scores;
  for (int i = 0; i < 20; ++i) {
    auto fc = oracle::fixture_case(i);
    ASSERT_LE(fc.triples.size(), 50u);
    for (const auto& c : all_checks(fc)) {
      expect_match(c, fc.name);
      if (c.got && c.got->status == Status::Assessed) distinct_scores[c.name].insert(c.got->score.to_string());
    }
  }
  // The fixtures must exercise each measure with more than one value.
  for (const auto& [name, scores] : distinct_scores) EXPECT_GT(scores.size(), 1u) << name;
}

TEST(RatioOracles, HalvesOfConciseness) {
  for (int i = 0; i < 20; ++i) {
    auto fc = oracle::fixture_case(i);
    rdf::Graph g(fc.triples);
    EXPECT_TRUE(oracle::same(oracle::extensional_conciseness(fc.triples, fc.cfg),
                             measures::automated::extensional_conciseness(g, fc.cfg)));
    EXPECT_TRUE(oracle::same(oracle::intensional_conciseness(fc.triples),
                             measures::automated::intensional_conciseness(g)));
  }
}

// --- examples per measure ---------------------------------------------------------------

TEST(SyntacticAccuracy, Examples) {
  measures::AssessmentConfig cfg;
  rdf::Graph g({Triple(ex("a"), ex("p"), typed("1", "integer")), Triple(ex("a"), ex("q"), typed("2", "integer")),
                Triple(ex("a"), ex("r"), typed("2020-01-01", "date")), Triple(ex("a"), ex("s"), Literal("x")),
                Triple(ex("a"), ex("t"), typed("1.5", "integer"))});
  auto r = measures::eval_syntactic_accuracy(g, cfg);
  EXPECT_EQ(r.score, Fraction(4, 5));
  EXPECT_TRUE(r.pass);
  ASSERT_EQ(r.evidence.size(), 1u);
  EXPECT_EQ(r.evidence[0].kind, measures::EvidenceKind::OffendingTriple);
  auto empty = measures::eval_syntactic_accuracy(rdf::Graph({Triple(ex("a"), ex("p"), ex("b"))}), cfg);
  EXPECT_EQ(empty.score, Fraction(1));
}

rdf::Graph dataset_with(std::vector<Triple> extra) {
  extra.push_back(Triple(ex("ds"), Iri(kRdfType), Iri("http://rdfs.org/ns/void#Dataset")));
  return rdf::Graph(extra);
}

TEST(License, Examples) {
  measures::AssessmentConfig cfg;
  auto ok = measures::eval_license(
      dataset_with({Triple(ex("ds"), Iri(kDct + "license"), Iri("https://creativecommons.org/licenses/by/4.0/"))}), cfg);
  EXPECT_EQ(ok.score, Fraction(1));
  EXPECT_TRUE(ok.pass);
  auto missing = measures::eval_license(dataset_with({}), cfg);
  EXPECT_EQ(missing.score, Fraction(0));
  ASSERT_FALSE(missing.evidence.empty());
  EXPECT_EQ(missing.evidence[0].kind, measures::EvidenceKind::MissingProperty);
  auto literal = measures::eval_license(dataset_with({Triple(ex("ds"), Iri(kDct + "license"), Literal("CC-BY"))}), cfg);
  EXPECT_EQ(literal.score, Fraction(0));
  EXPECT_FALSE(literal.pass);
  ASSERT_FALSE(literal.evidence.empty());
  EXPECT_EQ(literal.evidence[0].message, "license must be IRI");
  cfg.dataset_iri = ex("other");
  EXPECT_FALSE(measures::eval_license(
                   dataset_with({Triple(ex("ds"), Iri(kDct + "license"), Iri("https://creativecommons.org/licenses/by/4.0/"))}), cfg)
                   .pass);
}

TEST(Timeliness, Examples) {
  measures::AssessmentConfig cfg;
  double now = *rdf::xsd::to_epoch_seconds("2024-06-01T00:00:00Z");
  auto at = [&](const std::string& date) {
    return measures::eval_timeliness(rdf::Graph({Triple(ex("ds"), Iri(kDct + "modified"), typed(date, "date"))}), now, cfg);
  };
  EXPECT_TRUE(at("2024-05-02").pass);   // 30 days
  EXPECT_FALSE(at("2023-04-28").pass);  // 400 days
  auto none = measures::eval_timeliness(rdf::Graph({Triple(ex("a"), ex("p"), ex("b"))}), now, cfg);
  EXPECT_EQ(none.status, Status::Insufficient);
  EXPECT_FALSE(none.pass);
  auto junk = measures::eval_timeliness(rdf::Graph({Triple(ex("ds"), Iri(kDct + "issued"), Literal("last week"))}), now, cfg);
  EXPECT_EQ(junk.status, Status::Assessed);
  EXPECT_FALSE(junk.pass);
}

measures::AssessmentConfig person_profile() {
  measures::AssessmentConfig cfg;
  cfg.property_profile.push_back({ex("Person"),
                                  {{ex("name"), measures::ValueKind::Literal, false, true},
                                   {ex("birthDate"), measures::ValueKind::Literal, true, true},
                                   {ex("worksFor"), measures::ValueKind::Object, false, false}}});
  return cfg;
}

TEST(Correctness, Examples) {
  auto cfg = person_profile();
  std::vector<Triple> ts;
  for (int i = 0; i < 5; ++i) {
    std::string p = "p" + std::to_string(i);
    ts.push_back(type(p, "Person"));
    ts.push_back(Triple(ex(p), ex("name"), Literal("N" + std::to_string(i))));
    ts.push_back(Triple(ex(p), ex("birthDate"), typed(i == 0 ? "1990-02-30" : "1990-01-0" + std::to_string(i), "date")));
  }
  ts.push_back(Triple(ex("p1"), ex("worksFor"), Literal("ACME")));
  // 11 checked statements: 5 names, 5 dates (one ill-typed), one literal employer.
  rdf::Graph g(ts);
  auto r = measures::eval_correctness(g, cfg);
  EXPECT_EQ(r.score, Fraction(9, 11));

  std::vector<Triple> ten;
  for (int i = 0; i < 10; ++i) {
    std::string p = "q" + std::to_string(i);
    ten.push_back(type(p, "Person"));
    ten.push_back(Triple(ex(p), ex("worksFor"), i < 2 ? Term{Literal("x")} : Term{ex("org")}));
  }
  EXPECT_EQ(measures::automated::correctness(rdf::Graph(ten), cfg)->score, Fraction(8, 10));

  std::vector<Triple> clean{type("a", "Person"), Triple(ex("a"), ex("name"), Literal("A"))};
  auto ok = measures::eval_correctness(rdf::Graph(clean), cfg);
  EXPECT_EQ(ok.score, Fraction(1));
  EXPECT_TRUE(ok.pass);
  auto with_reviews = measures::eval_correctness(rdf::Graph(clean), cfg, human(Fraction(2, 5)));
  EXPECT_EQ(with_reviews.score, Fraction(2, 5));
  EXPECT_FALSE(with_reviews.pass);
}

TEST(SemanticAccuracy, Examples) {
  auto cfg = person_profile();
  std::vector<Triple> ts;
  for (int i = 0; i < 4; ++i) {
    std::string p = "p" + std::to_string(i);
    ts.push_back(type(p, "Person"));
    ts.push_back(Triple(ex(p), ex("birthDate"), typed("1990-01-01", "date")));
  }
  ts.push_back(Triple(ex("p0"), ex("birthDate"), typed("1991-01-01", "date")));
  auto r = measures::automated::semantic_accuracy(rdf::Graph(ts), cfg);
  EXPECT_EQ(r->score, Fraction(3, 4));
  ASSERT_EQ(r->evidence.size(), 1u);
  EXPECT_EQ(std::get<Iri>(*r->evidence[0].subject), ex("p0"));

  measures::AssessmentConfig none;
  auto insufficient = measures::eval_semantic_accuracy(rdf::Graph(ts), none);
  EXPECT_EQ(insufficient.status, Status::Insufficient);
  EXPECT_FALSE(insufficient.pass);
}

TEST(Trustworthiness, Examples) {
  measures::AssessmentConfig cfg;
  EXPECT_TRUE(measures::eval_trustworthiness(cfg, human(Fraction(1))).pass);
  auto pending = measures::eval_trustworthiness(cfg, human_pending());
  EXPECT_EQ(pending.status, Status::Insufficient);
  EXPECT_FALSE(pending.pass);
  auto low = measures::eval_trustworthiness(cfg, human(Fraction(1, 3)));
  EXPECT_EQ(low.status, Status::Assessed);
  EXPECT_FALSE(low.pass);
  EXPECT_TRUE(measures::eval_trustworthiness(cfg, human(Fraction(1, 2))).pass);
}

TEST(InstanceCompleteness, Examples) {
  measures::AssessmentConfig cfg;
  std::vector<Triple> ts;
  std::vector<Iri> ref;
  for (int i = 0; i < 10; ++i) {
    ref.push_back(ex("e" + std::to_string(i)));
    if (i < 7) ts.push_back(Triple(ex("e" + std::to_string(i)), ex("p"), Literal("x")));
  }
  cfg.reference_entities = ref;
  rdf::Graph g(ts);
  EXPECT_EQ(measures::eval_instance_completeness(g, cfg).score, Fraction(7, 10));
  auto both = measures::eval_instance_completeness(g, cfg, human(Fraction(9, 10)));
  EXPECT_EQ(both.score, Fraction(7, 10));
  EXPECT_EQ(both.sources_used, (measures::SourceSet{true, true}));
  cfg.reference_entities = std::vector<Iri>{};
  EXPECT_EQ(measures::automated::instance_completeness(g, cfg)->status, Status::NotApplicable);
  cfg.reference_entities.reset();
  EXPECT_EQ(measures::eval_instance_completeness(g, cfg).status, Status::Insufficient);
}

TEST(PropertyCompleteness, Examples) {
  measures::AssessmentConfig cfg;
  cfg.property_profile.push_back(
      {ex("Person"), {{ex("name"), measures::ValueKind::Any, false, true}, {ex("birthDate"), measures::ValueKind::Any, false, true}}});
  std::vector<Triple> ts;
  for (int i = 0; i < 3; ++i) {
    std::string p = "p" + std::to_string(i);
    ts.push_back(type(p, "Person"));
    ts.push_back(Triple(ex(p), ex("name"), Literal("n")));
    if (i < 2) ts.push_back(Triple(ex(p), ex("birthDate"), Literal("d")));
  }
  auto r = measures::eval_property_completeness(rdf::Graph(ts), cfg);
  EXPECT_EQ(r.score, Fraction(5, 6));
  ASSERT_EQ(r.evidence.size(), 1u);
  EXPECT_EQ(r.evidence[0].kind, measures::EvidenceKind::MissingProperty);
  ts.push_back(Triple(ex("p2"), ex("birthDate"), Literal("d")));
  EXPECT_EQ(measures::eval_property_completeness(rdf::Graph(ts), cfg).score, Fraction(1));
  EXPECT_EQ(measures::eval_property_completeness(rdf::Graph({Triple(ex("x"), ex("p"), ex("y"))}), cfg).status,
            Status::NotApplicable);
  EXPECT_EQ(measures::eval_property_completeness(rdf::Graph(ts), measures::AssessmentConfig{}).status,
            Status::NotApplicable);
}

TEST(PopulationCompleteness, Examples) {
  measures::AssessmentConfig cfg;
  std::vector<Triple> ts;
  for (int i = 0; i < 120; ++i) ts.push_back(Triple(ex("e" + std::to_string(i)), ex("p"), Literal("x")));
  cfg.reference_population = 100;
  EXPECT_EQ(measures::eval_population_completeness(rdf::Graph(std::vector<Triple>(ts.begin(), ts.begin() + 80)), cfg).score,
            Fraction(4, 5));
  EXPECT_EQ(measures::eval_population_completeness(rdf::Graph(ts), cfg).score, Fraction(1));
  cfg.reference_population.reset();
  EXPECT_EQ(measures::eval_population_completeness(rdf::Graph(ts), cfg).status, Status::NotApplicable);
}

TEST(Provenance, Examples) {
  measures::AssessmentConfig cfg;
  std::vector<Triple> ts;
  for (int i = 0; i < 10; ++i) {
    std::string e = "e" + std::to_string(i);
    ts.push_back(Triple(ex(e), ex("p"), Literal("x")));
    if (i < 5) ts.push_back(Triple(ex(e), Iri(kDct + "creator"), ex("someone")));
  }
  EXPECT_EQ(measures::eval_provenance(rdf::Graph(ts), cfg).score, Fraction(1, 2));
  EXPECT_EQ(measures::eval_provenance(rdf::Graph{}, cfg).status, Status::NotApplicable);
}

TEST(Reusability, Examples) {
  measures::AssessmentConfig cfg;
  cfg.internal_namespaces = {kEx};
  Triple lic(ex("ds"), Iri(kDct + "license"), Iri("https://creativecommons.org/licenses/by/4.0/"));
  Triple creator(ex("ds"), Iri(kDct + "creator"), ex("me"));
  Triple created(ex("ds"), Iri(kDct + "created"), typed("2020-01-01", "date"));
  auto all = measures::eval_reusability(dataset_with({lic, creator, created}), cfg);
  EXPECT_EQ(all.score, Fraction(1));
  // With dcterms declared internal nothing external is reused.
  cfg.internal_namespaces = {kEx, kDct};
  EXPECT_EQ(measures::eval_reusability(dataset_with({lic}), cfg).score, Fraction(1, 3));
}

TEST(Conciseness, Examples) {
  measures::AssessmentConfig cfg;
  std::vector<Triple> berlin{type("b1", "City"), type("b2", "City"), Triple(ex("b1"), Iri(kLabel), Literal("Berlin")),
                             Triple(ex("b2"), Iri(kLabel), Literal(" berlin "))};
  // Keep the class IRI out of the entity set.
  cfg.namespaces.schema_namespaces.push_back(kEx + "City");
  EXPECT_EQ(measures::automated::extensional_conciseness(rdf::Graph(berlin), cfg), Fraction(1, 2));
  auto linked = berlin;
  linked.push_back(Triple(ex("b1"), Iri("http://www.w3.org/2002/07/owl#sameAs"), ex("b2")));
  EXPECT_EQ(measures::automated::extensional_conciseness(rdf::Graph(linked), cfg), Fraction(1));
  EXPECT_EQ(measures::automated::intensional_conciseness(rdf::Graph(berlin)), Fraction(1));
  EXPECT_EQ(measures::eval_conciseness(rdf::Graph(berlin), cfg).score, Fraction(1, 2));
}

TEST(Conciseness, IntensionalDuplicates) {
  const std::string rdf_property = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
  std::vector<Triple> ts{Triple(ex("p1"), Iri(kRdfType), Iri(rdf_property)), Triple(ex("p1"), Iri(kLabel), Literal("name")),
                         Triple(ex("p2"), Iri(kRdfType), Iri(rdf_property)), Triple(ex("p2"), Iri(kLabel), Literal("Name")),
                         Triple(ex("C"), Iri(kRdfType), Iri("http://www.w3.org/2002/07/owl#Class")),
                         Triple(ex("C"), Iri(kLabel), Literal("name"))};
  EXPECT_EQ(measures::automated::intensional_conciseness(rdf::Graph(ts)), Fraction(2, 3));
  ts.push_back(Triple(ex("p1"), Iri("http://www.w3.org/2002/07/owl#equivalentProperty"), ex("p2")));
  EXPECT_EQ(measures::automated::intensional_conciseness(rdf::Graph(ts)), Fraction(1));
}

// Generated duplicate clusters: fully sameAs-linked clusters never count,
// unlinked ones cost exactly size-1.
TEST(Conciseness, SameAsClustersNeverPenalized) {
  std::mt19937 rng(99);
  measures::AssessmentConfig cfg;
  cfg.namespaces.schema_namespaces.push_back(kEx + "T");
  for (int round = 0; round < 200; ++round) {
    std::vector<Triple> ts;
    int entities = 0;
    int expected_redundant = 0;
    int clusters = 1 + static_cast<int>(rng() % 4);
    for (int c = 0; c < clusters; ++c) {
      int size = 1 + static_cast<int>(rng() % 4);
      bool flagged = rng() % 2 == 0;
      std::vector<std::string> members;
      for (int m = 0; m < size; ++m) {
        std::string e = "c" + std::to_string(c) + "m" + std::to_string(m);
        members.push_back(e);
        ts.push_back(Triple(ex(e), Iri(kRdfType), ex("T")));
        std::string label = "Label " + std::to_string(c);
        if (rng() % 2) label = " LABEL   " + std::to_string(c) + " ";
        ts.push_back(Triple(ex(e), Iri(kLabel), Literal(label)));
        ++entities;
      }
      if (flagged) {
        // Random spanning tree over the members, edges in random direction.
        for (int m = 1; m < size; ++m) {
          int parent = static_cast<int>(rng() % static_cast<unsigned>(m));
          auto a = ex(members[static_cast<std::size_t>(m)]), b = ex(members[static_cast<std::size_t>(parent)]);
          if (rng() % 2) std::swap(a, b);
          ts.push_back(Triple(a, Iri("http://www.w3.org/2002/07/owl#sameAs"), b));
        }
      } else {
        expected_redundant += size - 1;
      }
    }
    auto got = measures::automated::extensional_conciseness(rdf::Graph(ts), cfg);
    EXPECT_EQ(got, Fraction(entities - expected_redundant, entities)) << "round " << round;
  }
}

TEST(DataRepresentation, Examples) {
  std::vector<Triple> ts;
  for (int i = 0; i < 10; ++i) {
    ts.push_back(Triple(ex("e" + std::to_string(i)), ex("born"), i < 9 ? typed("2020-01-01", "date") : Literal("2020")));
  }
  EXPECT_EQ(measures::automated::data_representation(rdf::Graph(ts))->score, Fraction(9, 10));
  ts.push_back(Triple(ex("e0"), ex("name"), Literal("n")));
  EXPECT_EQ(measures::automated::data_representation(rdf::Graph(ts))->score, Fraction(19, 20));
  EXPECT_EQ(measures::automated::data_representation(rdf::Graph({Triple(ex("a"), ex("p"), ex("b"))}))->status,
            Status::NotApplicable);
}

TEST(Trackability, Examples) {
  measures::AssessmentConfig cfg;
  std::vector<Triple> sourced, unsourced;
  for (int i = 0; i < 10; ++i) {
    sourced.push_back(Triple(ex("e" + std::to_string(i)), Iri(kDct + "source"), Iri("https://www.wikidata.org/wiki/Q1")));
    unsourced.push_back(Triple(ex("e" + std::to_string(i)), Iri(kDct + "creator"), ex("me")));
  }
  EXPECT_EQ(measures::eval_trackability(rdf::Graph(sourced), cfg).score, Fraction(1));
  EXPECT_EQ(measures::eval_trackability(rdf::Graph(unsourced), cfg).score, Fraction(0));
}

TEST(IdentifierStability, Examples) {
  measures::AssessmentConfig cfg;
  rdf::Graph g({Triple(Iri("https://doi.org/10.1000/182"), ex("p"), Literal("x")),
                Triple(Iri("http://dx.doi.org/10.1038/nphys1170"), ex("p"), Literal("x")),
                Triple(Iri("https://orcid.org/0000-0002-1825-0097"), ex("p"), Literal("x")),
                Triple(rdf::BlankNode{"b"}, ex("p"), Literal("x"))});
  EXPECT_EQ(measures::eval_identifier_stability(g, cfg).score, Fraction(3, 4));
  cfg.stable_namespaces = {kEx};
  EXPECT_EQ(measures::eval_identifier_stability(rdf::Graph({Triple(ex("a"), ex("p"), ex("b"))}), cfg).score, Fraction(1));
  EXPECT_EQ(measures::eval_identifier_stability(rdf::Graph({Triple(rdf::BlankNode{"a"}, ex("p"), Literal("x"))}), cfg).score,
            Fraction(0));
}

TEST(IdentifierStability, PidPatterns) {
  measures::AssessmentConfig cfg;
  EXPECT_TRUE(measures::matches_pid(Iri("doi:10.1000/182"), cfg));
  EXPECT_TRUE(measures::matches_pid(Iri("https://orcid.org/0000-0002-1694-233X"), cfg));
  EXPECT_FALSE(measures::matches_pid(Iri("https://orcid.org/0000-0002-1694"), cfg));
  EXPECT_TRUE(measures::matches_pid(Iri("urn:isbn:978-0-13-110362-7"), cfg));
  EXPECT_TRUE(measures::matches_pid(Iri("https://w3id.org/kgmm/x"), cfg));
  EXPECT_FALSE(measures::matches_pid(Iri("https://doi.org/11.1000/182"), cfg));
}

TEST(Linkability, Examples) {
  measures::AssessmentConfig cfg;
  cfg.internal_namespaces = {kEx};
  std::vector<Triple> ts;
  for (int i = 0; i < 10; ++i) {
    std::string e = "e" + std::to_string(i);
    ts.push_back(Triple(ex(e), Iri(kRdfType), Iri("http://xmlns.com/foaf/0.1/Person")));
    ts.push_back(Triple(ex(e), ex("knows"), ex("e0")));
    if (i < 4) ts.push_back(Triple(ex(e), Iri("http://www.w3.org/2002/07/owl#sameAs"), Iri("http://dbpedia.org/resource/X")));
  }
  cfg.namespaces.schema_namespaces.push_back("http://xmlns.com/foaf/0.1/");
  EXPECT_EQ(measures::eval_linkability(rdf::Graph(ts), cfg).score, Fraction(4, 10));
  std::vector<Triple> closed{Triple(ex("a"), ex("p"), ex("b"))};
  EXPECT_EQ(measures::eval_linkability(rdf::Graph(closed), cfg).score, Fraction(0));
  EXPECT_EQ(measures::eval_linkability(rdf::Graph(closed), measures::AssessmentConfig{}).status, Status::NotApplicable);
}

// --- combine_sources -------------------------------------------------------------------

TEST(CombineSources, Examples) {
  const auto& both = measures::lookup(MeasureId::Correctness);
  auto r = measures::combine_sources(both, AutomatedScore::assessed(Fraction(9, 10)), human(Fraction(3, 5)), 0.8);
  EXPECT_EQ(r.score, Fraction(3, 5));
  EXPECT_FALSE(r.pass);
  auto a = measures::combine_sources(both, AutomatedScore::assessed(Fraction(85, 100)), {}, 0.8);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.sources_used, (measures::SourceSet{true, false}));
  auto none = measures::combine_sources(both, std::nullopt, human_pending(), 0.8);
  EXPECT_EQ(none.status, Status::Insufficient);
  EXPECT_FALSE(none.pass);
  auto partial = measures::combine_sources(both, AutomatedScore::assessed(Fraction(1)), human_pending(), 0.8);
  EXPECT_EQ(partial.status, Status::Insufficient);
  EXPECT_FALSE(partial.pass);
  auto na = measures::combine_sources(both, AutomatedScore::not_applicable("n/a"), {}, 0.8);
  EXPECT_EQ(na.status, Status::NotApplicable);
  EXPECT_FALSE(na.pass);
  EXPECT_EQ(measures::combine_sources(both, AutomatedScore::assessed(Fraction(4, 5)), {}, 0.8).pass, true);
}

TEST(CombineSources, Monotone) {
  std::mt19937 rng(5);
  const auto& def = measures::lookup(MeasureId::InstanceCompleteness);
  auto random_fraction = [&] { return Fraction(static_cast<std::int64_t>(rng() % 11), 10); };
  for (int i = 0; i < 2000; ++i) {
    std::optional<AutomatedScore> a;
    if (rng() % 4) a = AutomatedScore::assessed(random_fraction());
    HumanInput h;
    if (rng() % 3) h = rng() % 4 ? human(random_fraction()) : human_pending();
    double threshold = static_cast<double>(rng() % 11) / 10.0;
    auto before = measures::combine_sources(def, a, h, threshold);
    EXPECT_GE(before.score, Fraction(0));
    EXPECT_LE(before.score, Fraction(1));
    if (before.status == Status::Insufficient) EXPECT_FALSE(before.pass);
    if (before.pass) EXPECT_EQ(before.status, Status::Assessed);
    auto raised_a = a;
    if (raised_a && rng() % 2) raised_a->score = std::min(Fraction(1), raised_a->score + Fraction(1, 10));
    auto raised_h = h;
    if (raised_h.score) raised_h.score = std::min(Fraction(1), *raised_h.score + Fraction(1, 10));
    auto after = measures::combine_sources(def, raised_a, raised_h, threshold);
    if (before.pass) EXPECT_TRUE(after.pass);
  }
}

// --- thresholds and config --------------------------------------------------------------

TEST(Config, Thresholds) {
  measures::AssessmentConfig cfg;
  EXPECT_EQ(measures::threshold_for(MeasureId::License, cfg), 1.0);
  EXPECT_EQ(measures::threshold_for(MeasureId::Responsiveness, cfg), 1.0);
  EXPECT_EQ(measures::threshold_for(MeasureId::Queryability, cfg), 1.0);
  EXPECT_EQ(measures::threshold_for(MeasureId::Timeliness, cfg), 1.0);
  EXPECT_EQ(measures::threshold_for(MeasureId::Trustworthiness, cfg), 0.5);
  EXPECT_EQ(measures::threshold_for(MeasureId::Conciseness, cfg), 0.8);
  cfg.thresholds[MeasureId::Conciseness] = 0.6;
  EXPECT_EQ(measures::threshold_for(MeasureId::Conciseness, cfg), 0.6);
}

TEST(Config, Validation) {
  measures::AssessmentConfig cfg;
  EXPECT_NO_THROW(measures::validate(cfg));
  cfg.sample_size = 0;
  EXPECT_THROW(measures::validate(cfg), measures::ConfigError);
  cfg = {};
  cfg.thresholds[MeasureId::License] = 1.5;
  EXPECT_THROW(measures::validate(cfg), measures::ConfigError);
  cfg = {};
  cfg.pid_patterns.push_back({"broken", "(("});
  EXPECT_THROW(measures::validate(cfg), measures::ConfigError);
  cfg = {};
  cfg.probes.max_redirects = -1;
  EXPECT_THROW(measures::validate(cfg), std::exception);
}

TEST(Config, JsonRoundTrip) {
  for (int i = 0; i < 20; ++i) {
    auto cfg = oracle::fixture_case(i).cfg;
    cfg.thresholds[MeasureId::Linkability] = 0.25;
    cfg.reference_time = "2024-01-01T00:00:00Z";
    cfg.interface_url = "http://ex.org/ui";
    cfg.rng_seed = 42u + static_cast<unsigned>(i);
    auto doc = measures::to_json(cfg);
    auto back = measures::assessment_config_from_json(doc);
    EXPECT_EQ(measures::to_json(back), doc);
  }
}

// --- whole evaluator set -----------------------------------------------------------------

TEST(EvaluateAll, TwentyResultsInOrderAndPure) {
  auto fc = oracle::fixture_case(4);
  rdf::Graph g(fc.triples);
  measures::HumanInputs h{};
  measures::ProbeOutcomes probes;
  probes.skipped = "probes disabled (offline)";
  auto a = measures::evaluate_all(g, fc.cfg, 1.7e9, h, probes);
  auto b = measures::evaluate_all(g, fc.cfg, 1.7e9, h, probes);
  ASSERT_EQ(a.size(), 20u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].id, static_cast<MeasureId>(i));
    EXPECT_EQ(a[i].threshold, measures::threshold_for(a[i].id, fc.cfg));
  }
  EXPECT_EQ(a, b);
  EXPECT_EQ(a[static_cast<std::size_t>(MeasureId::Responsiveness)].status, Status::Insufficient);
  EXPECT_EQ(a[static_cast<std::size_t>(MeasureId::Responsiveness)].evidence.at(0).message, "probes disabled (offline)");
}

TEST(Labels, Normalization) {
  EXPECT_EQ(measures::normalize_label("  Berlin\t CITY "), "berlin city");
  EXPECT_EQ(measures::normalize_label("STRASSE"), measures::normalize_label("straße"));
  EXPECT_EQ(measures::normalize_label("ΑΘΗΝΑ"), "αθηνα");
  EXPECT_EQ(measures::normalize_label("МОСКВА"), "москва");
}

}  // namespace
