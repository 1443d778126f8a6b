#pragma once

#include <string>
#include <string_view>

#include "kgmm/rdf/graph.hpp"
#include "kgmm/rdf/ntriples.hpp"

namespace kgmm::rdf {

class UnknownPrefixError : public ParseError {
 public:
  UnknownPrefixError(std::string prefix, std::size_t line, std::size_t column);
  const std::string& prefix() const noexcept { return prefix_; }

 private:
  std::string prefix_;
};

// Turtle without collections, '[...]' property lists or quoted triples.
// Supports @prefix/@base (and the SPARQL-style PREFIX/BASE), the 'a'
// keyword, ';' and ',' lists, prefixed names, numeric and boolean
// shorthands, and all four string quoting forms.
Graph parse_turtle_subset(std::string_view text, std::string_view base_iri = {});

// Resolves a (possibly relative) reference against an absolute base.
std::string resolve_iri(std::string_view base, std::string_view reference);

}  // namespace kgmm::rdf
