#include "kgmm/rdf/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace kgmm::rdf {

namespace {

void append_escaped(std::string& out, std::string_view lexical) {
  for (char c : lexical) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c; break;
    }
  }
}

struct TermWriter {
  std::string& out;

  void operator()(const Iri& i) const {
    out += '<';
    out += i.str();
    out += '>';
  }
  void operator()(const BlankNode& b) const {
    out += "_:";
    out += b.label;
  }
  void operator()(const Literal& l) const {
    out += '"';
    append_escaped(out, l.lexical());
    out += '"';
    if (l.language()) {
      out += '@';
      out += *l.language();
    } else if (l.datatype().str() != std::string(ns::kXsd) + "string") {
      out += "^^<";
      out += l.datatype().str();
      out += '>';
    }
  }
};

}  // namespace

std::string to_ntriples(const Term& term) {
  std::string out;
  std::visit(TermWriter{out}, term);
  return out;
}

std::string to_ntriples(const Triple& t) {
  std::string out;
  TermWriter w{out};
  std::visit(w, t.subject);
  out += ' ';
  w(t.predicate);
  out += ' ';
  std::visit(w, t.object);
  out += " .";
  return out;
}

Graph::Graph(std::vector<Triple> triples) {
  std::vector<std::string> lines;
  lines.reserve(triples.size());
  for (const auto& t : triples) lines.push_back(to_ntriples(t));

  std::vector<std::size_t> order(triples.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lines[a] < lines[b]; });

  for (std::size_t idx : order) {
    if (!lines_.empty() && lines_.back() == lines[idx]) continue;
    lines_.push_back(std::move(lines[idx]));
    triples_.push_back(std::move(triples[idx]));
  }

  for (std::uint32_t i = 0; i < triples_.size(); ++i) {
    const Triple& t = triples_[i];
    by_subject_[to_ntriples(t.subject)].push_back(i);
    by_predicate_[t.predicate.str()].push_back(i);
    by_object_[to_ntriples(t.object)].push_back(i);
  }
}

std::vector<Triple> Graph::match(const std::optional<Term>& s, const std::optional<Iri>& p,
                                 const std::optional<Term>& o) const {
  static const std::vector<std::uint32_t> kNone;
  const std::vector<std::uint32_t>* best = nullptr;
  auto narrow = [&](const Index& index, const std::string& key) {
    auto it = index.find(key);
    const auto* hits = it == index.end() ? &kNone : &it->second;
    if (best == nullptr || hits->size() < best->size()) best = hits;
  };
  std::string skey, okey;
  if (s) narrow(by_subject_, skey = to_ntriples(*s));
  if (p) narrow(by_predicate_, p->str());
  if (o) narrow(by_object_, okey = to_ntriples(*o));

  std::vector<Triple> out;
  auto accept = [&](const Triple& t) {
    return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
  };
  if (best == nullptr) {
    out.assign(triples_.begin(), triples_.end());
    return out;
  }
  for (std::uint32_t i : *best) {
    if (accept(triples_[i])) out.push_back(triples_[i]);
  }
  return out;
}

bool Graph::contains(const Triple& t) const {
  return std::binary_search(lines_.begin(), lines_.end(), to_ntriples(t));
}

bool Graph::has(const Term& s, const Iri& p) const {
  auto it = by_subject_.find(to_ntriples(s));
  if (it == by_subject_.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](std::uint32_t i) { return triples_[i].predicate == p; });
}

std::vector<Term> Graph::objects(const Term& s, const Iri& p) const {
  std::vector<Term> out;
  for (auto& t : match(s, p, std::nullopt)) out.push_back(std::move(t.object));
  return out;
}

std::vector<Term> Graph::subjects(const Iri& p, const Term& o) const {
  std::vector<Term> out;
  for (auto& t : match(std::nullopt, p, o)) out.push_back(std::move(t.subject));
  return out;
}

bool in_any_namespace(const Iri& iri, std::span<const std::string> namespaces) {
  return std::any_of(namespaces.begin(), namespaces.end(),
                     [&](const std::string& ns) { return iri.starts_with(ns); });
}

std::vector<Iri> entities(const Graph& g, const NamespaceConfig& cfg) {
  const Iri rdf_type = iri(ns::kRdf, "type");
  std::set<Iri> found;
  for (const Triple& t : g.triples()) {
    if (const Iri* s = as_iri(t.subject)) found.insert(*s);
    if (t.predicate == rdf_type) {
      if (const Iri* o = as_iri(t.object)) found.insert(*o);
    }
  }
  std::vector<Iri> out;
  for (const Iri& i : found) {
    if (!in_any_namespace(i, cfg.schema_namespaces)) out.push_back(i);
  }
  return out;
}

}  // namespace kgmm::rdf
