#include "kgmm/rdf/ntriples.hpp"

#include "cursor.hpp"

namespace kgmm::rdf {

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

using detail::Cursor;

Iri read_absolute_iri(Cursor& in) {
  Cursor::Mark start = in.mark();
  if (!in.consume('<')) in.fail("expected IRI");
  std::string value = in.read_iriref();
  if (!Iri::is_valid(value)) Cursor::fail_at("relative or malformed IRI <" + value + ">", start);
  return Iri(std::move(value));
}

Term read_subject(Cursor& in) {
  if (in.peek() == '<') return read_absolute_iri(in);
  if (in.consume("_:")) return BlankNode{in.read_blank_label()};
  in.fail("expected subject (IRI or blank node)");
}

Term read_object(Cursor& in) {
  if (in.peek() == '<') return read_absolute_iri(in);
  if (in.consume("_:")) return BlankNode{in.read_blank_label()};
  if (in.consume('"')) {
    std::string lexical = in.read_string('"', false);
    if (in.consume("^^")) {
      Cursor::Mark at = in.mark();
      Iri datatype = read_absolute_iri(in);
      if (datatype == iri(ns::kRdf, "langString")) {
        Cursor::fail_at("rdf:langString literal without language tag", at);
      }
      return Literal(std::move(lexical), std::move(datatype));
    }
    if (in.consume('@')) return Literal::lang_string(std::move(lexical), in.read_langtag());
    return Literal(std::move(lexical));
  }
  in.fail("expected object (IRI, blank node or literal)");
}

}  // namespace

Graph parse_ntriples(std::string_view text) {
  Cursor in(text);
  std::vector<Triple> triples;
  while (!in.eof()) {
    in.skip_blanks();
    if (in.eof()) break;
    if (in.at_eol()) {
      in.consume_eol();
      continue;
    }
    if (in.peek() == '#') {
      in.skip_comment();
      continue;
    }
    Term s = read_subject(in);
    in.skip_blanks();
    Iri p = read_absolute_iri(in);
    in.skip_blanks();
    Term o = read_object(in);
    in.skip_blanks();
    if (!in.consume('.')) in.fail("expected '.' at end of statement");
    in.skip_blanks();
    if (in.peek() == '#') in.skip_comment();
    if (!in.eof() && !in.at_eol()) in.fail("unexpected content after statement");
    triples.emplace_back(std::move(s), std::move(p), std::move(o));
  }
  return Graph(std::move(triples));
}

std::string serialize_ntriples(const Graph& g) {
  std::string out;
  for (const std::string& line : g.lines()) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace kgmm::rdf
