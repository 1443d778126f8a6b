#include "kgmm/rdf/term.hpp"

#include <cctype>
#include <stdexcept>

namespace kgmm::rdf {

namespace {

bool is_scheme_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

}  // namespace

bool Iri::is_valid(std::string_view value) {
  if (value.empty() || !is_alpha(value.front())) return false;
  std::size_t colon = value.find(':');
  if (colon == std::string_view::npos) return false;
  for (std::size_t i = 1; i < colon; ++i) {
    if (!is_scheme_char(value[i])) return false;
  }
  for (char c : value) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20) return false;
    switch (c) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '^': case '`': case '\\':
        return false;
      default:
        break;
    }
  }
  return true;
}

Iri::Iri(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) {
    throw std::invalid_argument("not an absolute IRI: '" + value_ + "'");
  }
}

Iri iri(std::string_view ns, std::string_view local) {
  std::string s(ns);
  s += local;
  return Iri(std::move(s));
}

bool is_valid_language_tag(std::string_view tag) {
  if (tag.empty()) return false;
  std::size_t i = 0;
  std::size_t n = 0;
  while (i < tag.size() && is_alpha(tag[i])) ++i, ++n;
  if (n == 0) return false;
  while (i < tag.size()) {
    if (tag[i] != '-') return false;
    ++i;
    n = 0;
    while (i < tag.size() && std::isalnum(static_cast<unsigned char>(tag[i]))) ++i, ++n;
    if (n == 0) return false;
  }
  return true;
}

Literal::Literal(std::string lexical)
    : Literal(std::move(lexical), iri(ns::kXsd, "string"), std::nullopt) {}

Literal::Literal(std::string lexical, Iri datatype)
    : Literal(std::move(lexical), std::move(datatype), std::nullopt) {
  if (datatype_ == iri(ns::kRdf, "langString")) {
    throw std::invalid_argument("rdf:langString literal requires a language tag");
  }
}

Literal Literal::lang_string(std::string lexical, std::string language) {
  if (!is_valid_language_tag(language)) {
    throw std::invalid_argument("invalid language tag '" + language + "'");
  }
  for (char& c : language) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return Literal(std::move(lexical), iri(ns::kRdf, "langString"), std::move(language));
}

Literal::Literal(std::string lexical, Iri datatype, std::optional<std::string> language)
    : lexical_(std::move(lexical)), datatype_(std::move(datatype)), language_(std::move(language)) {}

Triple::Triple(Term s, Iri p, Term o)
    : subject(std::move(s)), predicate(std::move(p)), object(std::move(o)) {
  if (is_literal(subject)) {
    throw std::invalid_argument("literal in subject position");
  }
}

}  // namespace kgmm::rdf
