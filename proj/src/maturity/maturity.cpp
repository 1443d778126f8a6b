#include "kgmm/maturity/maturity.hpp"

#include <algorithm>
#include <sstream>

#include "kgmm/rdf/graph.hpp"

namespace kgmm::maturity {

using measures::Priority;
using measures::Status;
using nlohmann::json;

namespace {

const MeasureResult& find_result(std::span<const MeasureResult> results, MeasureId id) {
  auto it = std::find_if(results.begin(), results.end(),
                         [&](const MeasureResult& r) { return r.id == id; });
  if (it == results.end()) {
    throw MaturityError("no result for measure " + std::string(measures::to_string(id)));
  }
  return *it;
}

bool excluded(const MeasureResult& r, const MaturityPolicy& policy) {
  if (r.status == Status::NotApplicable) return policy.exclude_not_applicable;
  if (r.status == Status::Insufficient) return !policy.treat_insufficient_as_fail;
  return false;
}

}  // namespace

LevelStatus level_pass(int level, std::span<const MeasureResult> results,
                       const MaturityPolicy& policy, std::span<const MeasureDefinition> catalog) {
  LevelStatus st;
  st.level = level;
  for (const MeasureDefinition& def : catalog) {
    if (def.level != level) continue;
    const MeasureResult& r = find_result(results, def.id);
    if (excluded(r, policy)) {
      st.excluded.push_back(def.id);
      continue;
    }
    MeasurePass mp{def.id, r.status == Status::Assessed && r.pass};
    switch (def.priority) {
      case Priority::Essential: st.essential.push_back(mp); break;
      case Priority::Important: st.important.push_back(mp); break;
      case Priority::Useful: st.useful.push_back(mp); break;
    }
  }
  bool essentials_ok = true;
  for (const auto& m : st.essential) {
    if (!m.pass) {
      essentials_ok = false;
      st.blocking.push_back(m.id);
    }
  }
  auto passed_important = static_cast<std::size_t>(
      std::count_if(st.important.begin(), st.important.end(), [](const MeasurePass& m) { return m.pass; }));
  bool important_ok = st.important.empty() ||
                      static_cast<double>(passed_important) >=
                          policy.important_fraction * static_cast<double>(st.important.size());
  if (!important_ok) {
    for (const auto& m : st.important) {
      if (!m.pass) st.blocking.push_back(m.id);
    }
  }
  bool useful_ok = true;
  if (policy.strict_level5 && level == kMaxLevel) {
    useful_ok = std::any_of(st.useful.begin(), st.useful.end(), [](const MeasurePass& m) { return m.pass; });
    if (!useful_ok) {
      for (const auto& m : st.useful) st.blocking.push_back(m.id);
    }
  }
  st.passed = essentials_ok && important_ok && useful_ok;
  return st;
}

std::vector<LevelStatus> level_statuses(std::span<const MeasureResult> results,
                                        const MaturityPolicy& policy,
                                        std::span<const MeasureDefinition> catalog) {
  std::vector<LevelStatus> out;
  for (int level = 1; level <= kMaxLevel; ++level) {
    out.push_back(level_pass(level, results, policy, catalog));
  }
  return out;
}

int achieved_level(std::span<const LevelStatus> levels, const MaturityPolicy& policy) {
  int achieved = 0;
  for (const LevelStatus& st : levels) {
    if (st.passed) {
      achieved = std::max(achieved, st.level);
    } else if (policy.cumulative) {
      break;
    }
  }
  return achieved;
}

int achieved_level(std::span<const MeasureResult> results, const MaturityPolicy& policy,
                   std::span<const MeasureDefinition> catalog) {
  auto levels = level_statuses(results, policy, catalog);
  return achieved_level(levels, policy);
}

std::string_view guidance(MeasureId id) {
  switch (id) {
    case MeasureId::SyntacticAccuracy:
      return "fix literals whose lexical form does not match their datatype";
    case MeasureId::Timeliness:
      return "record when the data was last changed (dcterms:modified) and keep it current";
    case MeasureId::Correctness:
      return "correct values that break the property profile (resources given as literals, ill-typed values)";
    case MeasureId::SemanticAccuracy:
      return "resolve conflicting values on single-valued properties and check them against reality";
    case MeasureId::Trustworthiness:
      return "cite verifiable sources for the statements so reviewers can confirm them";
    case MeasureId::InstanceCompleteness:
      return "add the entities that are expected for the domain but missing";
    case MeasureId::PropertyCompleteness:
      return "fill in missing values for the required properties of each class";
    case MeasureId::PopulationCompleteness:
      return "extend the graph towards the expected population of entities";
    case MeasureId::Linkability:
      return "link entities to external resources (owl:sameAs, rdfs:seeAlso, skos:exactMatch)";
    case MeasureId::IdentifierStability:
      return "use persistent identifiers (DOI, ORCID, ISBN, w3id.org) or a stable namespace";
    case MeasureId::Responsiveness:
      return "make the exploration interface respond successfully in under the time limit";
    case MeasureId::Easiness:
      return "give every entity a human-readable label (rdfs:label or skos:prefLabel)";
    case MeasureId::Queryability:
      return "provide a SPARQL endpoint that answers standard protocol queries";
    case MeasureId::Dereferencability:
      return "serve RDF with status 200 when entity IRIs are looked up with an RDF Accept header";
    case MeasureId::Provenance:
      return "state who created each entity and when (dcterms:creator, dcterms:created, prov:wasAttributedTo)";
    case MeasureId::DataRepresentation:
      return "use one datatype per property consistently";
    case MeasureId::Trackability:
      return "link entities to their origin (dcterms:source, prov:wasDerivedFrom)";
    case MeasureId::License:
      return "add machine-readable license triple (dcterms:license with an IRI object) to the dataset description";
    case MeasureId::Reusability:
      return "combine a license, dataset-level creator and creation date, and reuse of established vocabularies";
    case MeasureId::Conciseness:
      return "merge duplicate entities and schema terms, or flag synonyms with owl:sameAs";
  }
  return "";
}

namespace {

std::string evidence_excerpt(const MeasureResult& r) {
  std::string out;
  if (r.status != Status::Assessed) out = "status " + std::string(measures::to_string(r.status));
  std::size_t shown = 0;
  for (const auto& e : r.evidence) {
    if (shown == 3) {
      out += "; ...";
      break;
    }
    if (!out.empty()) out += "; ";
    if (e.subject) out += rdf::to_ntriples(*e.subject) + " ";
    out += e.message;
    ++shown;
  }
  if (out.empty()) {
    out = "score " + r.score.to_string() + " below threshold";
  }
  return out;
}

}  // namespace

MaturityReport maturity_report(const std::string& target, std::span<const MeasureResult> results,
                               const review::ReviewAggregate& agg,
                               std::vector<review::LinkSuggestion> links,
                               const MaturityPolicy& policy) {
  MaturityReport rep;
  rep.target = target;
  rep.levels = level_statuses(results, policy);
  rep.achieved_level = achieved_level(rep.levels, policy);
  for (const LevelStatus& st : rep.levels) {
    for (MeasureId id : st.blocking) {
      rep.recommended_actions.push_back(
          {id, st.level, std::string(guidance(id)), evidence_excerpt(find_result(results, id))});
    }
  }
  rep.review_count = agg.review_count;
  rep.min_reviews = agg.min_reviews;
  rep.recommended_links = std::move(links);
  return rep;
}

namespace {

json passes_json(const std::vector<MeasurePass>& v) {
  json out = json::array();
  for (const auto& m : v) out.push_back({{"measure", measures::to_string(m.id)}, {"pass", m.pass}});
  return out;
}

json ids_json(const std::vector<MeasureId>& v) {
  json out = json::array();
  for (MeasureId id : v) out.push_back(measures::to_string(id));
  return out;
}

std::string join_ids(const std::vector<MeasureId>& v) {
  std::string out;
  for (MeasureId id : v) {
    if (!out.empty()) out += ", ";
    out += measures::to_string(id);
  }
  return out.empty() ? "-" : out;
}

}  // namespace

json to_json(const MaturityReport& rep) {
  json levels = json::array();
  for (const auto& st : rep.levels) {
    levels.push_back({{"level", st.level},
                      {"name", measures::level_name(st.level)},
                      {"passed", st.passed},
                      {"essential", passes_json(st.essential)},
                      {"important", passes_json(st.important)},
                      {"useful", passes_json(st.useful)},
                      {"excluded", ids_json(st.excluded)},
                      {"blocking", ids_json(st.blocking)}});
  }
  json actions = json::array();
  for (const auto& a : rep.recommended_actions) {
    actions.push_back({{"measure", measures::to_string(a.id)},
                       {"level", a.level},
                       {"guidance", a.guidance},
                       {"evidence", a.evidence}});
  }
  json links = json::array();
  for (const auto& l : rep.recommended_links) links.push_back({{"iri", l.iri}, {"count", l.count}});
  return {{"target", rep.target},
          {"achieved_level", rep.achieved_level},
          {"max_level", kMaxLevel},
          {"levels", levels},
          {"recommended_actions", actions},
          {"review_count", rep.review_count},
          {"min_reviews", rep.min_reviews},
          {"recommended_links", links}};
}

std::string to_text(const MaturityReport& rep) {
  std::ostringstream out;
  out << "Achieved maturity level: " << rep.achieved_level << "/" << kMaxLevel << "\n";
  out << "Target: " << rep.target << "\n";
  out << "Reviews: " << rep.review_count << " of " << rep.min_reviews << " required\n\n";
  out << "Level  Name            Result  Blocking\n";
  for (const auto& st : rep.levels) {
    std::string name(measures::level_name(st.level));
    out << "  " << st.level << "    " << name << std::string(name.size() < 16 ? 16 - name.size() : 1, ' ')
        << (st.passed ? "pass  " : "fail  ") << "  " << join_ids(st.blocking) << "\n";
  }
  if (!rep.recommended_actions.empty()) {
    out << "\nRecommended actions:\n";
    for (const auto& a : rep.recommended_actions) {
      out << "  - [L" << a.level << "] " << measures::to_string(a.id) << ": " << a.guidance << "\n";
      out << "      evidence: " << a.evidence << "\n";
    }
  }
  if (!rep.recommended_links.empty()) {
    out << "\nLinks recommended by reviewers:\n";
    for (const auto& l : rep.recommended_links) {
      out << "  - " << l.iri << " (" << l.count << ")\n";
    }
  }
  return out.str();
}

std::string badge(const MaturityReport& rep) {
  static constexpr const char* colors[] = {"red", "orange", "yellow", "yellowgreen", "green",
                                           "brightgreen"};
  int level = std::clamp(rep.achieved_level, 0, kMaxLevel);
  return "![KGMM maturity " + std::to_string(level) + "/5](https://img.shields.io/badge/KGMM-" +
         std::to_string(level) + "%2F5-" + colors[level] + ")\n";
}

json to_json(const MaturityPolicy& p) {
  return {{"important_fraction", p.important_fraction},
          {"cumulative", p.cumulative},
          {"strict_level5", p.strict_level5},
          {"treat_insufficient_as_fail", p.treat_insufficient_as_fail},
          {"exclude_not_applicable", p.exclude_not_applicable}};
}

MaturityPolicy maturity_policy_from_json(const json& doc) {
  MaturityPolicy p;
  p.important_fraction = doc.value("important_fraction", p.important_fraction);
  p.cumulative = doc.value("cumulative", p.cumulative);
  p.strict_level5 = doc.value("strict_level5", p.strict_level5);
  p.treat_insufficient_as_fail = doc.value("treat_insufficient_as_fail", p.treat_insufficient_as_fail);
  p.exclude_not_applicable = doc.value("exclude_not_applicable", p.exclude_not_applicable);
  if (!(p.important_fraction >= 0.0 && p.important_fraction <= 1.0)) {
    throw std::invalid_argument("maturity.important_fraction outside [0,1]");
  }
  return p;
}

}  // namespace kgmm::maturity
