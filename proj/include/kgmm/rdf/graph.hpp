#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgmm/rdf/term.hpp"

namespace kgmm::rdf {

// Canonical N-Triples spelling of a single term.
std::string to_ntriples(const Term& term);
// One statement line, without the trailing newline.
std::string to_ntriples(const Triple& triple);

// An immutable set of triples with subject, predicate and object indexes.
// Triples are kept in canonical order (sorted by their N-Triples line), which
// is also the order every read returns.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<Triple> triples);

  std::span<const Triple> triples() const noexcept { return triples_; }
  std::size_t size() const noexcept { return triples_.size(); }
  bool empty() const noexcept { return triples_.empty(); }

  // Canonical statement lines, parallel to triples().
  std::span<const std::string> lines() const noexcept { return lines_; }

  std::vector<Triple> match(const std::optional<Term>& s,
                            const std::optional<Iri>& p,
                            const std::optional<Term>& o) const;

  bool contains(const Triple& t) const;
  bool has(const Term& s, const Iri& p) const;
  std::vector<Term> objects(const Term& s, const Iri& p) const;
  std::vector<Term> subjects(const Iri& p, const Term& o) const;

  bool operator==(const Graph& other) const { return lines_ == other.lines_; }

 private:
  using Index = std::unordered_map<std::string, std::vector<std::uint32_t>>;

  std::vector<Triple> triples_;
  std::vector<std::string> lines_;
  Index by_subject_;
  Index by_predicate_;
  Index by_object_;
};

struct NamespaceConfig {
  std::vector<std::string> schema_namespaces{
      "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
      "http://www.w3.org/2000/01/rdf-schema#",
      "http://www.w3.org/2002/07/owl#",
      "http://www.w3.org/2001/XMLSchema#",
  };
};

bool in_any_namespace(const Iri& iri, std::span<const std::string> namespaces);

// IRIs in subject position plus objects of rdf:type, minus anything inside
// the configured schema namespaces. Sorted, unique.
std::vector<Iri> entities(const Graph& g, const NamespaceConfig& cfg = {});

}  // namespace kgmm::rdf
