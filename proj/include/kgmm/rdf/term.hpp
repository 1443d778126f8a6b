#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace kgmm::rdf {

namespace ns {
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kProv = "http://www.w3.org/ns/prov#";
inline constexpr std::string_view kSkos = "http://www.w3.org/2004/02/skos/core#";
inline constexpr std::string_view kSchema = "http://schema.org/";
inline constexpr std::string_view kCc = "http://creativecommons.org/ns#";
inline constexpr std::string_view kVoid = "http://rdfs.org/ns/void#";
inline constexpr std::string_view kDcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view kFoaf = "http://xmlns.com/foaf/0.1/";
}  // namespace ns

// An absolute IRI. Construction validates: non-empty, a scheme followed by
// ':', and none of the characters N-Triples forbids inside <...>.
class Iri {
 public:
  explicit Iri(std::string value);

  static bool is_valid(std::string_view value);

  const std::string& str() const noexcept { return value_; }
  bool starts_with(std::string_view prefix) const noexcept {
    return std::string_view(value_).starts_with(prefix);
  }

  auto operator<=>(const Iri&) const = default;

 private:
  std::string value_;
};

// Shorthand for building vocabulary IRIs: iri(ns::kRdf, "type").
Iri iri(std::string_view ns, std::string_view local);

struct BlankNode {
  std::string label;
  auto operator<=>(const BlankNode&) const = default;
};

class Literal {
 public:
  // xsd:string literal.
  explicit Literal(std::string lexical);
  // Typed literal; rdf:langString is rejected here, use lang_string().
  Literal(std::string lexical, Iri datatype);
  static Literal lang_string(std::string lexical, std::string language);

  const std::string& lexical() const noexcept { return lexical_; }
  const Iri& datatype() const noexcept { return datatype_; }
  const std::optional<std::string>& language() const noexcept { return language_; }

  auto operator<=>(const Literal&) const = default;

 private:
  Literal(std::string lexical, Iri datatype, std::optional<std::string> language);

  std::string lexical_;
  Iri datatype_;
  std::optional<std::string> language_;
};

using Term = std::variant<Iri, BlankNode, Literal>;

inline bool is_iri(const Term& t) { return std::holds_alternative<Iri>(t); }
inline bool is_blank(const Term& t) { return std::holds_alternative<BlankNode>(t); }
inline bool is_literal(const Term& t) { return std::holds_alternative<Literal>(t); }
inline const Iri* as_iri(const Term& t) { return std::get_if<Iri>(&t); }
inline const Literal* as_literal(const Term& t) { return std::get_if<Literal>(&t); }

struct Triple {
  // Throws std::invalid_argument when the subject is a literal.
  Triple(Term subject, Iri predicate, Term object);

  Term subject;
  Iri predicate;
  Term object;

  bool operator==(const Triple&) const = default;
};

// Lower-cases and validates a BCP-47 style tag: [a-zA-Z]+ ('-' [a-zA-Z0-9]+)*
bool is_valid_language_tag(std::string_view tag);

}  // namespace kgmm::rdf
