#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kgmm/rdf/graph.hpp"

namespace kgmm::rdf {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Parses a complete N-Triples document. Comments and blank lines are skipped,
// duplicate statements collapse, a leading UTF-8 BOM is ignored.
Graph parse_ntriples(std::string_view text);

// Canonical document: one line per triple, sorted, each ending in '\n'.
std::string serialize_ntriples(const Graph& g);

}  // namespace kgmm::rdf
