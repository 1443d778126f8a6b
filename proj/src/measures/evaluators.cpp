#include "kgmm/measures/evaluators.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <regex>
#include <set>

#include "kgmm/rdf/literal_validation.hpp"

namespace kgmm::measures {

using rdf::Graph;
using rdf::Iri;
using rdf::Term;
using rdf::Triple;
namespace ns = rdf::ns;

namespace {

struct Vocab {
  Iri rdf_type = rdf::iri(ns::kRdf, "type");
  Iri rdf_property = rdf::iri(ns::kRdf, "Property");
  Iri rdfs_label = rdf::iri(ns::kRdfs, "label");
  Iri rdfs_class = rdf::iri(ns::kRdfs, "Class");
  Iri owl_class = rdf::iri(ns::kOwl, "Class");
  Iri owl_object_property = rdf::iri(ns::kOwl, "ObjectProperty");
  Iri owl_datatype_property = rdf::iri(ns::kOwl, "DatatypeProperty");
  Iri owl_annotation_property = rdf::iri(ns::kOwl, "AnnotationProperty");
  Iri owl_same_as = rdf::iri(ns::kOwl, "sameAs");
  Iri owl_equivalent_class = rdf::iri(ns::kOwl, "equivalentClass");
  Iri owl_equivalent_property = rdf::iri(ns::kOwl, "equivalentProperty");
  Iri dct_creator = rdf::iri(ns::kDcterms, "creator");
  Iri dct_created = rdf::iri(ns::kDcterms, "created");
  Iri dct_source = rdf::iri(ns::kDcterms, "source");
  Iri dct_license = rdf::iri(ns::kDcterms, "license");
  Iri dct_modified = rdf::iri(ns::kDcterms, "modified");
  Iri dct_issued = rdf::iri(ns::kDcterms, "issued");
  Iri dct_title = rdf::iri(ns::kDcterms, "title");
  Iri prov_attributed = rdf::iri(ns::kProv, "wasAttributedTo");
  Iri prov_derived = rdf::iri(ns::kProv, "wasDerivedFrom");
  Iri prov_quoted = rdf::iri(ns::kProv, "wasQuotedFrom");
  Iri cc_license = rdf::iri(ns::kCc, "license");
  Iri schema_license = rdf::iri(ns::kSchema, "license");
  Iri schema_modified = rdf::iri(ns::kSchema, "dateModified");
  Iri schema_name = rdf::iri(ns::kSchema, "name");
  Iri schema_dataset = rdf::iri(ns::kSchema, "Dataset");
  Iri void_dataset = rdf::iri(ns::kVoid, "Dataset");
  Iri dcat_dataset = rdf::iri(ns::kDcat, "Dataset");
  Iri skos_pref_label = rdf::iri(ns::kSkos, "prefLabel");
  Iri foaf_name = rdf::iri(ns::kFoaf, "name");
};

const Vocab& vocab() {
  static const Vocab v;
  return v;
}

constexpr std::size_t kEvidenceLimit = 50;

// Evidence list that keeps the first kEvidenceLimit entries and summarises
// the rest in one trailing entry.
class EvidenceList {
 public:
  void add(EvidenceKind kind, std::optional<Term> subject, std::string message) {
    if (items_.size() < kEvidenceLimit) {
      items_.push_back({kind, std::move(subject), std::move(message)});
    } else {
      ++dropped_;
      dropped_kind_ = kind;
    }
  }
  std::vector<Evidence> take() {
    if (dropped_ > 0) {
      items_.push_back({dropped_kind_, std::nullopt,
                        "and " + std::to_string(dropped_) + " more of the same kind"});
    }
    return std::move(items_);
  }

 private:
  std::vector<Evidence> items_;
  std::size_t dropped_ = 0;
  EvidenceKind dropped_kind_ = EvidenceKind::MissingProperty;
};

bool has_any(const Graph& g, const Term& s, std::initializer_list<const Iri*> predicates) {
  return std::any_of(predicates.begin(), predicates.end(),
                     [&](const Iri* p) { return g.has(s, *p); });
}

std::string short_list(std::initializer_list<const Iri*> predicates) {
  std::string out;
  for (const Iri* p : predicates) {
    if (!out.empty()) out += ", ";
    out += p->str();
  }
  return out;
}

// Instances of each profiled class, in canonical subject order.
std::vector<Term> instances_of(const Graph& g, const Iri& cls) {
  auto subjects = g.subjects(vocab().rdf_type, cls);
  std::sort(subjects.begin(), subjects.end());
  subjects.erase(std::unique(subjects.begin(), subjects.end()), subjects.end());
  return subjects;
}

std::span<const std::string> rdf_core() {
  static const std::array<std::string, 3> core{std::string(ns::kRdf), std::string(ns::kRdfs),
                                               std::string(ns::kOwl)};
  return core;
}

// Fraction of entities for which `covered` holds, with a missing-property
// evidence entry for each one that is not covered.
template <typename Pred>
std::optional<AutomatedScore> entity_ratio(const std::vector<Iri>& ents, Pred covered,
                                           const std::string& missing_message) {
  if (ents.empty()) return AutomatedScore::not_applicable("graph has no entities");
  EvidenceList ev;
  std::size_t hits = 0;
  for (const Iri& e : ents) {
    if (covered(e)) {
      ++hits;
    } else {
      ev.add(EvidenceKind::MissingProperty, Term{e}, missing_message);
    }
  }
  return AutomatedScore::assessed(Fraction::ratio(hits, ents.size()), ev.take());
}

// Union-find over IRIs, used for owl:sameAs style equivalences.
class Equivalences {
 public:
  void join(const Term& a, const Term& b) {
    std::string ra = find(rdf::to_ntriples(a));
    std::string rb = find(rdf::to_ntriples(b));
    if (ra != rb) parent_[std::max(ra, rb)] = std::min(ra, rb);
  }
  bool same(const Term& a, const Term& b) {
    return find(rdf::to_ntriples(a)) == find(rdf::to_ntriples(b));
  }

 private:
  std::string find(const std::string& x) {
    auto it = parent_.find(x);
    if (it == parent_.end()) return x;
    std::string root = find(it->second);
    it->second = root;
    return root;
  }
  std::map<std::string, std::string> parent_;
};

Equivalences equivalences(const Graph& g, std::initializer_list<const Iri*> predicates) {
  Equivalences eq;
  for (const Iri* p : predicates) {
    for (const Triple& t : g.match(std::nullopt, *p, std::nullopt)) {
      if (!rdf::is_literal(t.object)) eq.join(t.subject, t.object);
    }
  }
  return eq;
}

std::set<std::string> normalized_labels(const Graph& g, const Term& s) {
  std::set<std::string> out;
  for (const Term& o : g.objects(s, vocab().rdfs_label)) {
    if (const auto* lit = rdf::as_literal(o)) out.insert(normalize_label(lit->lexical()));
  }
  return out;
}

std::string join_terms(const std::vector<Term>& terms) {
  std::string out;
  for (const Term& t : terms) {
    if (!out.empty()) out += ", ";
    out += rdf::to_ntriples(t);
  }
  return out;
}

// Sums size-1 over clusters whose members are not all equivalent.
std::size_t redundant_members(const std::map<std::pair<std::set<std::string>, std::set<std::string>>,
                                             std::vector<Term>>& clusters,
                              Equivalences& eq, std::vector<Evidence>* evidence) {
  std::size_t redundant = 0;
  for (const auto& [key, members] : clusters) {
    if (members.size() < 2) continue;
    bool flagged = std::all_of(members.begin() + 1, members.end(),
                               [&](const Term& m) { return eq.same(members.front(), m); });
    if (flagged) continue;
    redundant += members.size() - 1;
    if (evidence) {
      evidence->push_back({EvidenceKind::DuplicateCluster, members.front(),
                           "same label and type without owl:sameAs: " + join_terms(members)});
    }
  }
  return redundant;
}

// --- simple Unicode case folding ------------------------------------------

std::vector<char32_t> decode_utf8(std::string_view s) {
  std::vector<char32_t> out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? c : c & (0x7F >> len);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_space(char32_t c) {
  return c == 0x20 || (c >= 0x09 && c <= 0x0D) || c == 0x85 || c == 0xA0 || c == 0x1680 ||
         (c >= 0x2000 && c <= 0x200A) || c == 0x2028 || c == 0x2029 || c == 0x202F ||
         c == 0x205F || c == 0x3000;
}

// Appends the case fold of one code point. Covers Basic Latin, Latin-1,
// Latin Extended-A, Greek and Cyrillic; other code points pass through.
void fold(char32_t c, std::u32string& out) {
  auto even_upper = [](char32_t x) { return (x % 2 == 0) ? x + 1 : x; };
  auto odd_upper = [](char32_t x) { return (x % 2 == 1) ? x + 1 : x; };
  if (c >= U'A' && c <= U'Z') { out += c + 32; return; }
  if (c == 0xB5) { out += char32_t{0x3BC}; return; }
  if (c == 0xDF) { out += U"ss"; return; }
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) { out += c + 32; return; }
  if (c == 0x130) { out += U"i̇"; return; }
  if (c == 0x178) { out += char32_t{0xFF}; return; }
  if (c == 0x17F) { out += U's'; return; }
  if ((c >= 0x100 && c <= 0x12F) || (c >= 0x132 && c <= 0x137) || (c >= 0x14A && c <= 0x177)) {
    out += even_upper(c);
    return;
  }
  if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) { out += odd_upper(c); return; }
  if (c == 0x386) { out += char32_t{0x3AC}; return; }
  if (c >= 0x388 && c <= 0x38A) { out += c + 37; return; }
  if (c == 0x38C) { out += char32_t{0x3CC}; return; }
  if (c == 0x38E || c == 0x38F) { out += c + 63; return; }
  if (c >= 0x391 && c <= 0x3AB && c != 0x3A2) { out += c + 32; return; }
  if (c == 0x3C2) { out += char32_t{0x3C3}; return; }
  if (c >= 0x400 && c <= 0x40F) { out += c + 80; return; }
  if (c >= 0x410 && c <= 0x42F) { out += c + 32; return; }
  if ((c >= 0x460 && c <= 0x481) || (c >= 0x48A && c <= 0x4BF) || (c >= 0x4D0 && c <= 0x52F)) {
    out += even_upper(c);
    return;
  }
  if (c == 0x4C0) { out += char32_t{0x4CF}; return; }
  if (c >= 0x4C1 && c <= 0x4CE) { out += odd_upper(c); return; }
  out += c;
}

// xsd:date / xsd:dateTime timestamps attached to any node.
const std::array<const Iri*, 3>& timestamp_predicates() {
  static const std::array<const Iri*, 3> preds{&vocab().dct_modified, &vocab().dct_issued,
                                               &vocab().schema_modified};
  return preds;
}

}  // namespace

std::string normalize_label(std::string_view label) {
  std::u32string folded;
  bool pending_space = false;
  for (char32_t c : decode_utf8(label)) {
    if (is_space(c)) {
      pending_space = !folded.empty();
      continue;
    }
    if (pending_space) folded += U' ';
    pending_space = false;
    fold(c, folded);
  }
  std::string out;
  for (char32_t c : folded) encode_utf8(c, out);
  return out;
}

bool matches_pid(const Iri& iri, const AssessmentConfig& cfg) {
  if (rdf::in_any_namespace(iri, cfg.stable_namespaces)) return true;
  for (const auto& p : cfg.pid_patterns) {
    std::regex re(p.pattern);
    if (std::regex_match(iri.str(), re)) return true;
  }
  return false;
}

std::vector<Term> dataset_nodes(const Graph& g, const AssessmentConfig& cfg) {
  if (cfg.dataset_iri) return {Term{*cfg.dataset_iri}};
  std::set<Term> nodes;
  for (const Iri* cls : {&vocab().void_dataset, &vocab().dcat_dataset, &vocab().schema_dataset}) {
    for (const Term& s : g.subjects(vocab().rdf_type, *cls)) nodes.insert(s);
  }
  return {nodes.begin(), nodes.end()};
}

namespace automated {

std::optional<AutomatedScore> syntactic_accuracy(const Graph& g) {
  EvidenceList ev;
  std::size_t total = 0;
  std::size_t good = 0;
  auto triples = g.triples();
  auto lines = g.lines();
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto* lit = rdf::as_literal(triples[i].object);
    if (!lit) continue;
    ++total;
    if (rdf::is_well_formed(rdf::validate_literal(*lit))) {
      ++good;
    } else {
      ev.add(EvidenceKind::OffendingTriple, triples[i].subject,
             "ill-formed literal for " + lit->datatype().str() + ": " + lines[i]);
    }
  }
  if (total == 0) return AutomatedScore::assessed(Fraction(1));
  return AutomatedScore::assessed(Fraction::ratio(good, total), ev.take());
}

std::optional<AutomatedScore> license(const Graph& g, const AssessmentConfig& cfg) {
  const auto& v = vocab();
  auto nodes = dataset_nodes(g, cfg);
  if (nodes.empty()) {
    return AutomatedScore::assessed(
        Fraction(0), {{EvidenceKind::MissingProperty, std::nullopt,
                       "no dataset description node; set dataset_iri or type a node as "
                       "void:Dataset, dcat:Dataset or schema:Dataset"}});
  }
  EvidenceList ev;
  for (const Term& node : nodes) {
    bool literal_seen = false;
    for (const Iri* p : {&v.dct_license, &v.cc_license, &v.schema_license}) {
      for (const Term& o : g.objects(node, *p)) {
        if (rdf::is_iri(o)) return AutomatedScore::assessed(Fraction(1));
        if (rdf::is_literal(o)) literal_seen = true;
      }
    }
    if (literal_seen) {
      ev.add(EvidenceKind::OffendingTriple, node, "license must be IRI");
    } else {
      ev.add(EvidenceKind::MissingProperty, node,
             "missing property: one of " + short_list({&v.dct_license, &v.cc_license, &v.schema_license}));
    }
  }
  return AutomatedScore::assessed(Fraction(0), ev.take());
}

std::optional<AutomatedScore> timeliness(const Graph& g, const AssessmentConfig& cfg,
                                         double now_epoch_seconds) {
  std::optional<double> latest;
  std::optional<Term> latest_subject;
  std::size_t seen = 0;
  EvidenceList unparseable;
  for (const Iri* p : timestamp_predicates()) {
    for (const Triple& t : g.match(std::nullopt, *p, std::nullopt)) {
      ++seen;
      const auto* lit = rdf::as_literal(t.object);
      std::optional<double> when = lit ? rdf::xsd::to_epoch_seconds(lit->lexical()) : std::nullopt;
      if (!when) {
        unparseable.add(EvidenceKind::OffendingTriple, t.subject,
                        "unparseable timestamp: " + rdf::to_ntriples(t));
        continue;
      }
      if (!latest || *when > *latest) {
        latest = when;
        latest_subject = t.subject;
      }
    }
  }
  if (seen == 0) {
    return AutomatedScore::insufficient(
        "no dcterms:modified, dcterms:issued or schema:dateModified timestamp");
  }
  if (!latest) return AutomatedScore::assessed(Fraction(0), unparseable.take());
  double age_days = (now_epoch_seconds - *latest) / 86400.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "most recent timestamp is %.1f days old (limit %.1f)", age_days,
                cfg.max_age_days);
  bool fresh = age_days <= cfg.max_age_days;
  return AutomatedScore::assessed(
      Fraction(fresh ? 1 : 0),
      {{fresh ? EvidenceKind::ReviewSummary : EvidenceKind::MissingProperty, latest_subject, buf}});
}

std::optional<AutomatedScore> correctness(const Graph& g, const AssessmentConfig& cfg) {
  if (cfg.property_profile.empty()) {
    return AutomatedScore::not_applicable("no property profile configured");
  }
  // Keyed by statement line so a statement reached through two profiled
  // classes is checked once; the value says whether it violates a rule.
  std::map<std::string, std::pair<Triple, std::string>> checked;
  for (const ClassProfile& cp : cfg.property_profile) {
    for (const Term& inst : instances_of(g, cp.cls)) {
      for (const PropertySpec& spec : cp.properties) {
        for (const Term& o : g.objects(inst, spec.predicate)) {
          Triple t(inst, spec.predicate, o);
          std::string why;
          if (const auto* lit = rdf::as_literal(o)) {
            if (spec.value == ValueKind::Object) {
              why = "literal where the profile expects a resource";
            } else if (!rdf::is_well_formed(rdf::validate_literal(*lit))) {
              why = "ill-typed literal for " + lit->datatype().str();
            }
          }
          auto line = rdf::to_ntriples(t);
          auto [it, inserted] = checked.try_emplace(line, t, why);
          if (!inserted && it->second.second.empty()) it->second.second = why;
        }
      }
    }
  }
  if (checked.empty()) return AutomatedScore::assessed(Fraction(1));
  EvidenceList ev;
  std::size_t violations = 0;
  for (const auto& [line, entry] : checked) {
    if (entry.second.empty()) continue;
    ++violations;
    ev.add(EvidenceKind::OffendingTriple, entry.first.subject, entry.second + ": " + line);
  }
  return AutomatedScore::assessed(Fraction::ratio(checked.size() - violations, checked.size()),
                                  ev.take());
}

std::optional<AutomatedScore> semantic_accuracy(const Graph& g, const AssessmentConfig& cfg) {
  std::map<Term, std::set<Iri>> single_valued;
  bool any_single = false;
  for (const ClassProfile& cp : cfg.property_profile) {
    std::set<Iri> preds;
    for (const PropertySpec& spec : cp.properties) {
      if (spec.single_valued) preds.insert(spec.predicate);
    }
    if (preds.empty()) continue;
    any_single = true;
    for (const Term& inst : instances_of(g, cp.cls)) {
      single_valued[inst].insert(preds.begin(), preds.end());
    }
  }
  if (!any_single) return std::nullopt;
  if (single_valued.empty()) {
    return AutomatedScore::not_applicable("no instances of classes with single-valued properties");
  }
  EvidenceList ev;
  std::size_t conflicting = 0;
  for (const auto& [inst, preds] : single_valued) {
    bool conflict = false;
    for (const Iri& p : preds) {
      auto values = g.objects(inst, p);
      if (values.size() > 1) {
        conflict = true;
        ev.add(EvidenceKind::OffendingTriple, inst,
               std::to_string(values.size()) + " distinct values for single-valued " + p.str());
      }
    }
    if (conflict) ++conflicting;
  }
  return AutomatedScore::assessed(
      Fraction::ratio(single_valued.size() - conflicting, single_valued.size()), ev.take());
}

std::optional<AutomatedScore> instance_completeness(const Graph& g, const AssessmentConfig& cfg) {
  if (!cfg.reference_entities) return std::nullopt;
  std::set<Iri> reference(cfg.reference_entities->begin(), cfg.reference_entities->end());
  if (reference.empty()) return AutomatedScore::not_applicable("reference entity set is empty");
  auto ents = rdf::entities(g, cfg.namespaces);
  std::set<Iri> present(ents.begin(), ents.end());
  EvidenceList ev;
  std::size_t hits = 0;
  for (const Iri& r : reference) {
    if (present.contains(r)) {
      ++hits;
    } else {
      ev.add(EvidenceKind::MissingProperty, Term{r}, "reference entity absent from graph");
    }
  }
  return AutomatedScore::assessed(Fraction::ratio(hits, reference.size()), ev.take());
}

std::optional<AutomatedScore> property_completeness(const Graph& g, const AssessmentConfig& cfg) {
  if (cfg.property_profile.empty()) {
    return AutomatedScore::not_applicable("no property profile configured");
  }
  std::set<std::pair<Term, Iri>> slots;
  for (const ClassProfile& cp : cfg.property_profile) {
    for (const Term& inst : instances_of(g, cp.cls)) {
      for (const PropertySpec& spec : cp.properties) {
        if (spec.required) slots.emplace(inst, spec.predicate);
      }
    }
  }
  if (slots.empty()) {
    return AutomatedScore::not_applicable("no instances of profiled classes with required properties");
  }
  EvidenceList ev;
  std::size_t filled = 0;
  for (const auto& [inst, pred] : slots) {
    if (g.has(inst, pred)) {
      ++filled;
    } else {
      ev.add(EvidenceKind::MissingProperty, inst, "missing property " + pred.str());
    }
  }
  return AutomatedScore::assessed(Fraction::ratio(filled, slots.size()), ev.take());
}

std::optional<AutomatedScore> population_completeness(const Graph& g,
                                                      const AssessmentConfig& cfg) {
  if (!cfg.reference_population) {
    return AutomatedScore::not_applicable("no reference population configured");
  }
  auto n = rdf::entities(g, cfg.namespaces).size();
  auto ref = *cfg.reference_population;
  std::vector<Evidence> ev;
  if (n < ref) {
    ev.push_back({EvidenceKind::MissingProperty, std::nullopt,
                  std::to_string(n) + " of " + std::to_string(ref) + " expected entities present"});
    return AutomatedScore::assessed(Fraction::ratio(n, ref), std::move(ev));
  }
  return AutomatedScore::assessed(Fraction(1));
}

std::optional<AutomatedScore> provenance(const Graph& g, const AssessmentConfig& cfg) {
  const auto& v = vocab();
  auto preds = {&v.dct_creator, &v.dct_created, &v.prov_attributed, &v.dct_source};
  return entity_ratio(
      rdf::entities(g, cfg.namespaces), [&](const Iri& e) { return has_any(g, Term{e}, preds); },
      "no provenance statement (" + short_list(preds) + ")");
}

std::optional<AutomatedScore> reusability(const Graph& g, const AssessmentConfig& cfg) {
  const auto& v = vocab();
  EvidenceList ev;
  int held = 0;

  auto lic = license(g, cfg);
  if (lic->score == Fraction(1)) {
    ++held;
  } else {
    ev.add(EvidenceKind::MissingProperty, std::nullopt, "no machine-readable license on the dataset");
  }

  bool dataset_prov = false;
  for (const Term& node : dataset_nodes(g, cfg)) {
    if (g.has(node, v.dct_creator) && g.has(node, v.dct_created)) dataset_prov = true;
  }
  if (dataset_prov) {
    ++held;
  } else {
    ev.add(EvidenceKind::MissingProperty, std::nullopt,
           "dataset node lacks dcterms:creator together with dcterms:created");
  }

  bool reuse = false;
  for (const Triple& t : g.triples()) {
    if (!rdf::in_any_namespace(t.predicate, cfg.internal_namespaces) &&
        !rdf::in_any_namespace(t.predicate, rdf_core())) {
      reuse = true;
      break;
    }
  }
  if (reuse) {
    ++held;
  } else {
    ev.add(EvidenceKind::MissingProperty, std::nullopt,
           "no predicate from an external vocabulary is used");
  }
  return AutomatedScore::assessed(Fraction(held, 3), ev.take());
}

Fraction extensional_conciseness(const Graph& g, const AssessmentConfig& cfg,
                                 std::vector<Evidence>* evidence) {
  const auto& v = vocab();
  auto ents = rdf::entities(g, cfg.namespaces);
  if (ents.empty()) return Fraction(1);
  std::map<std::pair<std::set<std::string>, std::set<std::string>>, std::vector<Term>> clusters;
  for (const Iri& e : ents) {
    Term t{e};
    auto labels = normalized_labels(g, t);
    if (labels.empty()) continue;
    std::set<std::string> types;
    for (const Term& o : g.objects(t, v.rdf_type)) types.insert(rdf::to_ntriples(o));
    clusters[{std::move(labels), std::move(types)}].push_back(std::move(t));
  }
  Equivalences eq = equivalences(g, {&v.owl_same_as});
  std::size_t redundant = redundant_members(clusters, eq, evidence);
  return Fraction::ratio(ents.size() - redundant, ents.size());
}

Fraction intensional_conciseness(const Graph& g, std::vector<Evidence>* evidence) {
  const auto& v = vocab();
  std::map<Term, std::string> terms;  // term -> "class" | "property"
  for (const Iri* cls : {&v.rdf_property, &v.owl_object_property, &v.owl_datatype_property,
                         &v.owl_annotation_property}) {
    for (const Term& s : g.subjects(v.rdf_type, *cls)) terms[s] = "property";
  }
  for (const Iri* cls : {&v.rdfs_class, &v.owl_class}) {
    for (const Term& s : g.subjects(v.rdf_type, *cls)) terms.try_emplace(s, "class");
  }
  if (terms.empty()) return Fraction(1);
  std::map<std::pair<std::set<std::string>, std::set<std::string>>, std::vector<Term>> clusters;
  for (const auto& [term, kind] : terms) {
    auto labels = normalized_labels(g, term);
    if (labels.empty()) continue;
    clusters[{std::move(labels), {kind}}].push_back(term);
  }
  Equivalences eq =
      equivalences(g, {&v.owl_same_as, &v.owl_equivalent_class, &v.owl_equivalent_property});
  std::size_t redundant = redundant_members(clusters, eq, evidence);
  return Fraction::ratio(terms.size() - redundant, terms.size());
}

std::optional<AutomatedScore> conciseness(const Graph& g, const AssessmentConfig& cfg) {
  std::vector<Evidence> ev;
  Fraction ext = extensional_conciseness(g, cfg, &ev);
  Fraction in = intensional_conciseness(g, &ev);
  if (ev.size() > kEvidenceLimit) {
    auto dropped = ev.size() - kEvidenceLimit;
    ev.resize(kEvidenceLimit);
    ev.push_back({EvidenceKind::DuplicateCluster, std::nullopt,
                  "and " + std::to_string(dropped) + " more of the same kind"});
  }
  return AutomatedScore::assessed(std::min(ext, in), std::move(ev));
}

std::optional<AutomatedScore> data_representation(const Graph& g) {
  // predicate -> datatype -> count
  std::map<Iri, std::map<std::string, std::size_t>> histogram;
  for (const Triple& t : g.triples()) {
    if (const auto* lit = rdf::as_literal(t.object)) ++histogram[t.predicate][lit->datatype().str()];
  }
  if (histogram.empty()) return AutomatedScore::not_applicable("graph has no literal values");
  Fraction sum;
  EvidenceList ev;
  for (const auto& [pred, counts] : histogram) {
    std::size_t total = 0;
    std::size_t dominant = 0;
    std::string dominant_type;
    for (const auto& [dt, n] : counts) {
      total += n;
      if (n > dominant) {
        dominant = n;
        dominant_type = dt;
      }
    }
    sum = sum + Fraction::ratio(dominant, total);
    if (dominant < total) {
      ev.add(EvidenceKind::OffendingTriple, Term{pred},
             std::to_string(total - dominant) + " of " + std::to_string(total) +
                 " values deviate from the dominant datatype " + dominant_type);
    }
  }
  return AutomatedScore::assessed(sum / Fraction::ratio(histogram.size(), 1), ev.take());
}

std::optional<AutomatedScore> trackability(const Graph& g, const AssessmentConfig& cfg) {
  const auto& v = vocab();
  auto preds = {&v.dct_source, &v.prov_derived, &v.prov_quoted};
  return entity_ratio(
      rdf::entities(g, cfg.namespaces), [&](const Iri& e) { return has_any(g, Term{e}, preds); },
      "no source link (" + short_list(preds) + ")");
}

std::optional<AutomatedScore> identifier_stability(const Graph& g, const AssessmentConfig& cfg) {
  auto ents = rdf::entities(g, cfg.namespaces);
  std::set<std::string> blanks;
  for (const Triple& t : g.triples()) {
    if (const auto* b = std::get_if<rdf::BlankNode>(&t.subject)) blanks.insert(b->label);
  }
  std::size_t denominator = ents.size() + blanks.size();
  if (denominator == 0) return AutomatedScore::not_applicable("graph has no subjects");
  std::vector<std::regex> patterns;
  for (const auto& p : cfg.pid_patterns) patterns.emplace_back(p.pattern);
  EvidenceList ev;
  std::size_t stable = 0;
  for (const Iri& e : ents) {
    bool ok = rdf::in_any_namespace(e, cfg.stable_namespaces) ||
              std::any_of(patterns.begin(), patterns.end(),
                          [&](const std::regex& re) { return std::regex_match(e.str(), re); });
    if (ok) {
      ++stable;
    } else {
      ev.add(EvidenceKind::MissingProperty, Term{e},
             "identifier matches no persistent identifier scheme or stable namespace");
    }
  }
  if (!blanks.empty()) {
    ev.add(EvidenceKind::MissingProperty, std::nullopt,
           std::to_string(blanks.size()) + " blank-node subjects have no stable identifier");
  }
  return AutomatedScore::assessed(Fraction::ratio(stable, denominator), ev.take());
}

std::optional<AutomatedScore> linkability(const Graph& g, const AssessmentConfig& cfg) {
  if (cfg.internal_namespaces.empty()) {
    return AutomatedScore::not_applicable("no internal namespaces configured");
  }
  const auto& v = vocab();
  return entity_ratio(
      rdf::entities(g, cfg.namespaces),
      [&](const Iri& e) {
        for (const Triple& t : g.match(Term{e}, std::nullopt, std::nullopt)) {
          if (t.predicate == v.rdf_type) continue;
          const Iri* o = rdf::as_iri(t.object);
          if (o && !rdf::in_any_namespace(*o, cfg.internal_namespaces)) return true;
        }
        return false;
      },
      "no link to a resource outside the internal namespaces");
}

std::optional<AutomatedScore> easiness(const Graph& g, const AssessmentConfig& cfg) {
  const auto& v = vocab();
  auto preds = {&v.rdfs_label, &v.skos_pref_label, &v.schema_name, &v.foaf_name, &v.dct_title};
  return entity_ratio(
      rdf::entities(g, cfg.namespaces), [&](const Iri& e) { return has_any(g, Term{e}, preds); },
      "no human-readable label");
}

std::optional<AutomatedScore> responsiveness(const ProbeOutcomes& probes) {
  if (!probes.responsiveness) {
    return AutomatedScore::insufficient(probes.skipped.empty() ? "responsiveness probe did not run"
                                                               : probes.skipped);
  }
  const auto& r = *probes.responsiveness;
  char buf[64];
  std::snprintf(buf, sizeof buf, " in %.3f s", r.http.elapsed.count());
  std::string msg = "GET " + r.http.iri + ": ";
  if (!r.http.error.empty()) {
    msg += r.http.error;
  } else {
    msg += "HTTP " + (r.http.status ? std::to_string(*r.http.status) : std::string("none")) + buf;
  }
  return AutomatedScore::assessed(Fraction(r.pass ? 1 : 0),
                                  {{EvidenceKind::ProbeOutcome, Term{Iri(r.http.iri)}, msg}});
}

std::optional<AutomatedScore> queryability(const ProbeOutcomes& probes) {
  if (!probes.sparql) {
    return AutomatedScore::insufficient(probes.skipped.empty() ? "SPARQL probe did not run"
                                                               : probes.skipped);
  }
  const auto& r = *probes.sparql;
  std::string msg = "ASK against " + r.endpoint + ": ";
  if (r.responded) {
    msg += std::string("answered ") + (*r.ask_answer ? "true" : "false");
  } else {
    msg += r.error;
  }
  return AutomatedScore::assessed(Fraction(r.responded ? 1 : 0),
                                  {{EvidenceKind::ProbeOutcome, std::nullopt, msg}});
}

std::optional<AutomatedScore> dereferencability(const ProbeOutcomes& probes,
                                                const AssessmentConfig& cfg) {
  if (!probes.dereference) {
    return AutomatedScore::insufficient(probes.skipped.empty() ? "dereferencing probe did not run"
                                                               : probes.skipped);
  }
  EvidenceList ev;
  std::size_t counted = 0;
  std::size_t ok = 0;
  for (const auto& r : *probes.dereference) {
    auto parts = probes::split_url(r.iri);
    bool http = parts && (parts->scheme == "http" || parts->scheme == "https");
    if (!http && Iri::is_valid(r.iri) && matches_pid(Iri(r.iri), cfg)) continue;
    ++counted;
    if (r.dereferenceable) {
      ++ok;
      continue;
    }
    std::string msg;
    if (!r.error.empty()) {
      msg = r.error;
    } else if (r.status) {
      msg = "HTTP " + std::to_string(*r.status) +
            (r.content_type.empty() ? std::string() : " with " + r.content_type);
    } else {
      msg = "no response";
    }
    std::optional<Term> subject;
    if (Iri::is_valid(r.iri)) subject = Term{Iri(r.iri)};
    ev.add(EvidenceKind::ProbeOutcome, subject, "not dereferenceable: " + msg);
  }
  if (counted == 0) return AutomatedScore::not_applicable("no dereferenceable candidates in sample");
  return AutomatedScore::assessed(Fraction::ratio(ok, counted), ev.take());
}

}  // namespace automated

namespace {

MeasureResult finish(MeasureId id, const std::optional<AutomatedScore>& a, const HumanInput& h,
                     const AssessmentConfig& cfg) {
  return combine_sources(lookup(id), a, h, threshold_for(id, cfg));
}

}  // namespace

MeasureResult eval_syntactic_accuracy(const Graph& g, const AssessmentConfig& cfg,
                                      const HumanInput& human) {
  return finish(MeasureId::SyntacticAccuracy, automated::syntactic_accuracy(g), human, cfg);
}
MeasureResult eval_license(const Graph& g, const AssessmentConfig& cfg) {
  return finish(MeasureId::License, automated::license(g, cfg), {}, cfg);
}
MeasureResult eval_timeliness(const Graph& g, double now, const AssessmentConfig& cfg,
                              const HumanInput& human) {
  return finish(MeasureId::Timeliness, automated::timeliness(g, cfg, now), human, cfg);
}
MeasureResult eval_correctness(const Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human) {
  return finish(MeasureId::Correctness, automated::correctness(g, cfg), human, cfg);
}
MeasureResult eval_semantic_accuracy(const Graph& g, const AssessmentConfig& cfg,
                                     const HumanInput& human) {
  return finish(MeasureId::SemanticAccuracy, automated::semantic_accuracy(g, cfg), human, cfg);
}
MeasureResult eval_trustworthiness(const AssessmentConfig& cfg, const HumanInput& human) {
  return finish(MeasureId::Trustworthiness, std::nullopt, human, cfg);
}
MeasureResult eval_instance_completeness(const Graph& g, const AssessmentConfig& cfg,
                                         const HumanInput& human) {
  return finish(MeasureId::InstanceCompleteness, automated::instance_completeness(g, cfg), human,
                cfg);
}
MeasureResult eval_property_completeness(const Graph& g, const AssessmentConfig& cfg,
                                         const HumanInput& human) {
  return finish(MeasureId::PropertyCompleteness, automated::property_completeness(g, cfg), human,
                cfg);
}
MeasureResult eval_population_completeness(const Graph& g, const AssessmentConfig& cfg) {
  return finish(MeasureId::PopulationCompleteness, automated::population_completeness(g, cfg), {},
                cfg);
}
MeasureResult eval_provenance(const Graph& g, const AssessmentConfig& cfg,
                              const HumanInput& human) {
  return finish(MeasureId::Provenance, automated::provenance(g, cfg), human, cfg);
}
MeasureResult eval_reusability(const Graph& g, const AssessmentConfig& cfg) {
  return finish(MeasureId::Reusability, automated::reusability(g, cfg), {}, cfg);
}
MeasureResult eval_conciseness(const Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human) {
  return finish(MeasureId::Conciseness, automated::conciseness(g, cfg), human, cfg);
}
MeasureResult eval_data_representation(const Graph& g, const AssessmentConfig& cfg,
                                       const HumanInput& human) {
  return finish(MeasureId::DataRepresentation, automated::data_representation(g), human, cfg);
}
MeasureResult eval_trackability(const Graph& g, const AssessmentConfig& cfg,
                                const HumanInput& human) {
  return finish(MeasureId::Trackability, automated::trackability(g, cfg), human, cfg);
}
MeasureResult eval_identifier_stability(const Graph& g, const AssessmentConfig& cfg) {
  return finish(MeasureId::IdentifierStability, automated::identifier_stability(g, cfg), {}, cfg);
}
MeasureResult eval_linkability(const Graph& g, const AssessmentConfig& cfg,
                               const HumanInput& human) {
  return finish(MeasureId::Linkability, automated::linkability(g, cfg), human, cfg);
}
MeasureResult eval_easiness(const Graph& g, const AssessmentConfig& cfg, const HumanInput& human) {
  return finish(MeasureId::Easiness, automated::easiness(g, cfg), human, cfg);
}
MeasureResult eval_responsiveness(const ProbeOutcomes& probes, const AssessmentConfig& cfg,
                                  const HumanInput& human) {
  return finish(MeasureId::Responsiveness, automated::responsiveness(probes), human, cfg);
}
MeasureResult eval_queryability(const ProbeOutcomes& probes, const AssessmentConfig& cfg,
                                const HumanInput& human) {
  return finish(MeasureId::Queryability, automated::queryability(probes), human, cfg);
}
MeasureResult eval_dereferencability(const ProbeOutcomes& probes, const AssessmentConfig& cfg) {
  return finish(MeasureId::Dereferencability, automated::dereferencability(probes, cfg), {}, cfg);
}

std::vector<MeasureResult> evaluate_all(const Graph& g, const AssessmentConfig& cfg, double now,
                                        const HumanInputs& human, const ProbeOutcomes& probes) {
  auto h = [&](MeasureId id) -> const HumanInput& { return human[static_cast<std::size_t>(id)]; };
  std::vector<MeasureResult> out;
  out.reserve(kMeasureCount);
  for (MeasureId id : all_measures()) {
    std::optional<AutomatedScore> a;
    switch (id) {
      case MeasureId::SyntacticAccuracy: a = automated::syntactic_accuracy(g); break;
      case MeasureId::Timeliness: a = automated::timeliness(g, cfg, now); break;
      case MeasureId::Correctness: a = automated::correctness(g, cfg); break;
      case MeasureId::SemanticAccuracy: a = automated::semantic_accuracy(g, cfg); break;
      case MeasureId::Trustworthiness: break;
      case MeasureId::InstanceCompleteness: a = automated::instance_completeness(g, cfg); break;
      case MeasureId::PropertyCompleteness: a = automated::property_completeness(g, cfg); break;
      case MeasureId::PopulationCompleteness: a = automated::population_completeness(g, cfg); break;
      case MeasureId::Linkability: a = automated::linkability(g, cfg); break;
      case MeasureId::IdentifierStability: a = automated::identifier_stability(g, cfg); break;
      case MeasureId::Responsiveness: a = automated::responsiveness(probes); break;
      case MeasureId::Easiness: a = automated::easiness(g, cfg); break;
      case MeasureId::Queryability: a = automated::queryability(probes); break;
      case MeasureId::Dereferencability: a = automated::dereferencability(probes, cfg); break;
      case MeasureId::Provenance: a = automated::provenance(g, cfg); break;
      case MeasureId::DataRepresentation: a = automated::data_representation(g); break;
      case MeasureId::Trackability: a = automated::trackability(g, cfg); break;
      case MeasureId::License: a = automated::license(g, cfg); break;
      case MeasureId::Reusability: a = automated::reusability(g, cfg); break;
      case MeasureId::Conciseness: a = automated::conciseness(g, cfg); break;
    }
    out.push_back(finish(id, a, h(id), cfg));
  }
  return out;
}

double resolve_now(const AssessmentConfig& cfg) {
  if (cfg.reference_time) {
    auto t = rdf::xsd::to_epoch_seconds(*cfg.reference_time);
    if (!t) throw ConfigError("reference_time is not an xsd:date or xsd:dateTime: " + *cfg.reference_time);
    return *t;
  }
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return std::chrono::duration<double>(now).count();
}

}  // namespace kgmm::measures
