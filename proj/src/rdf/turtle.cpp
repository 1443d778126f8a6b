#include "kgmm/rdf/turtle.hpp"

#include <cctype>
#include <map>

#include "cursor.hpp"

namespace kgmm::rdf {

UnknownPrefixError::UnknownPrefixError(std::string prefix, std::size_t line, std::size_t column)
    : ParseError("unknown prefix '" + prefix + "'", line, column), prefix_(std::move(prefix)) {}

namespace {

struct UriParts {
  std::string scheme, authority, path, query, fragment;
  bool has_authority = false, has_query = false, has_fragment = false;
};

UriParts split_uri(std::string_view s) {
  UriParts p;
  std::size_t colon = s.find(':');
  std::size_t first_delim = s.find_first_of("/?#");
  if (colon != std::string_view::npos && colon > 0 &&
      (first_delim == std::string_view::npos || colon < first_delim)) {
    p.scheme = std::string(s.substr(0, colon));
    s.remove_prefix(colon + 1);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    std::size_t end = s.find_first_of("/?#");
    p.has_authority = true;
    p.authority = std::string(s.substr(0, end));
    s.remove_prefix(end == std::string_view::npos ? s.size() : end);
  }
  std::size_t hash = s.find('#');
  if (hash != std::string_view::npos) {
    p.has_fragment = true;
    p.fragment = std::string(s.substr(hash + 1));
    s = s.substr(0, hash);
  }
  std::size_t q = s.find('?');
  if (q != std::string_view::npos) {
    p.has_query = true;
    p.query = std::string(s.substr(q + 1));
    s = s.substr(0, q);
  }
  p.path = std::string(s);
  return p;
}

std::string remove_dot_segments(std::string in) {
  std::string out;
  while (!in.empty()) {
    if (in.starts_with("../")) {
      in.erase(0, 3);
    } else if (in.starts_with("./")) {
      in.erase(0, 2);
    } else if (in.starts_with("/./")) {
      in.erase(0, 2);
    } else if (in == "/.") {
      in = "/";
    } else if (in.starts_with("/../") || in == "/..") {
      in = in == "/.." ? "/" : in.substr(3);
      std::size_t slash = out.rfind('/');
      out.erase(slash == std::string::npos ? 0 : slash);
    } else if (in == "." || in == "..") {
      in.clear();
    } else {
      std::size_t next = in.find('/', in.front() == '/' ? 1 : 0);
      if (next == std::string::npos) next = in.size();
      out += in.substr(0, next);
      in.erase(0, next);
    }
  }
  return out;
}

std::string merge_paths(const UriParts& base, const std::string& ref_path) {
  if (base.has_authority && base.path.empty()) return "/" + ref_path;
  std::size_t slash = base.path.rfind('/');
  if (slash == std::string::npos) return ref_path;
  return base.path.substr(0, slash + 1) + ref_path;
}

std::string join(const UriParts& t) {
  std::string out = t.scheme + ":";
  if (t.has_authority) out += "//" + t.authority;
  out += t.path;
  if (t.has_query) out += "?" + t.query;
  if (t.has_fragment) out += "#" + t.fragment;
  return out;
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_pn_chars_base(char c) { return is_alpha(c) || static_cast<unsigned char>(c) >= 0x80; }
bool is_pn_chars_u(char c) { return is_pn_chars_base(c) || c == '_'; }
bool is_pn_chars(char c) { return is_pn_chars_u(c) || c == '-' || is_digit(c); }
bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

bool is_local_escapable(char c) {
  static constexpr std::string_view kChars = "_~.-!$&'()*+,;=/?#@%";
  return kChars.find(c) != std::string_view::npos;
}

using detail::Cursor;

class TurtleReader {
 public:
  TurtleReader(std::string_view text, std::string_view base) : in_(text), base_(base) {}

  Graph run() {
    for (;;) {
      skip_ws();
      if (in_.eof()) break;
      statement();
    }
    return Graph(std::move(triples_));
  }

 private:
  void skip_ws() {
    for (;;) {
      while (!in_.eof() && is_ws(in_.peek())) in_.get();
      if (in_.peek() == '#') {
        in_.skip_comment();
        continue;
      }
      return;
    }
  }

  bool at_keyword(std::string_view kw) const {
    for (std::size_t i = 0; i < kw.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(in_.peek(i))) != kw[i]) return false;
    }
    char after = in_.peek(kw.size());
    return after == '\0' || is_ws(after) || after == '<' || after == '#';
  }

  void statement() {
    if (in_.consume("@prefix")) return prefix_directive(true);
    if (in_.consume("@base")) return base_directive(true);
    if (at_keyword("prefix")) {
      for (int i = 0; i < 6; ++i) in_.get();
      return prefix_directive(false);
    }
    if (at_keyword("base")) {
      for (int i = 0; i < 4; ++i) in_.get();
      return base_directive(false);
    }
    Term subject = read_subject();
    skip_ws();
    predicate_object_list(subject);
    skip_ws();
    if (!in_.consume('.')) in_.fail("expected '.' at end of statement");
  }

  void prefix_directive(bool needs_dot) {
    skip_ws();
    std::string prefix;
    Cursor::Mark at = in_.mark();
    if (in_.peek() != ':') {
      if (!is_pn_chars_base(in_.peek())) in_.fail("expected prefix name");
      prefix = read_name_chars();
    }
    if (!in_.consume(':')) Cursor::fail_at("expected ':' after prefix name", at);
    skip_ws();
    prefixes_[prefix] = read_iriref_resolved();
    finish_directive(needs_dot);
  }

  void base_directive(bool needs_dot) {
    skip_ws();
    base_ = read_iriref_resolved();
    finish_directive(needs_dot);
  }

  void finish_directive(bool needs_dot) {
    skip_ws();
    if (needs_dot && !in_.consume('.')) in_.fail("expected '.' after directive");
  }

  // PN_PREFIX style name; trailing dots are not part of it.
  std::string read_name_chars() {
    std::string name;
    Cursor::Mark good = in_.mark();
    std::size_t good_len = 0;
    while (is_pn_chars(in_.peek()) || in_.peek() == '.') {
      char c = in_.get();
      name += c;
      if (c != '.') {
        good = in_.mark();
        good_len = name.size();
      }
    }
    in_.reset(good);
    name.resize(good_len);
    return name;
  }

  std::string read_iriref_resolved() {
    Cursor::Mark at = in_.mark();
    if (!in_.consume('<')) in_.fail("expected IRI");
    std::string value = in_.read_iriref();
    if (Iri::is_valid(value)) return value;
    if (base_.empty()) Cursor::fail_at("relative IRI <" + value + "> without base", at);
    std::string resolved = resolve_iri(base_, value);
    if (!Iri::is_valid(resolved)) Cursor::fail_at("malformed IRI <" + value + ">", at);
    return resolved;
  }

  Iri read_iri() {
    if (in_.peek() == '<') return Iri(read_iriref_resolved());
    return read_prefixed_name();
  }

  Iri read_prefixed_name() {
    Cursor::Mark at = in_.mark();
    std::string prefix;
    if (in_.peek() != ':') {
      if (!is_pn_chars_base(in_.peek())) in_.fail("expected IRI or prefixed name");
      prefix = read_name_chars();
    }
    if (!in_.consume(':')) Cursor::fail_at("expected ':' in prefixed name", at);
    auto it = prefixes_.find(prefix);
    if (it == prefixes_.end()) throw UnknownPrefixError(prefix, at.line, at.column);
    std::string value = it->second + read_local_name();
    if (!Iri::is_valid(value)) Cursor::fail_at("prefixed name expands to malformed IRI", at);
    return Iri(std::move(value));
  }

  std::string read_local_name() {
    std::string local;
    Cursor::Mark good = in_.mark();
    std::size_t good_len = 0;
    bool first = true;
    for (;;) {
      char c = in_.peek();
      if (c == '%') {
        if (!std::isxdigit(static_cast<unsigned char>(in_.peek(1))) ||
            !std::isxdigit(static_cast<unsigned char>(in_.peek(2)))) {
          in_.fail("invalid percent escape in local name");
        }
        local += in_.get();
        local += in_.get();
        local += in_.get();
      } else if (c == '\\') {
        if (!is_local_escapable(in_.peek(1))) in_.fail("invalid escape in local name");
        in_.get();
        local += in_.get();
      } else if (is_pn_chars(c) || c == ':' || (c == '.' && !first)) {
        local += in_.get();
        if (c == '.') {
          first = false;
          continue;
        }
      } else {
        break;
      }
      first = false;
      good = in_.mark();
      good_len = local.size();
    }
    in_.reset(good);
    local.resize(good_len);
    return local;
  }

  Term read_subject() {
    char c = in_.peek();
    if (c == '[' || c == '(') in_.fail("blank node property lists and collections are not supported");
    if (in_.consume("_:")) return BlankNode{in_.read_blank_label()};
    if (c == '"' || c == '\'' || is_digit(c)) in_.fail("literal in subject position");
    return read_iri();
  }

  Iri read_verb() {
    if (in_.peek() == 'a') {
      char next = in_.peek(1);
      if (is_ws(next) || next == '<' || next == '"' || next == '\'' || next == '_' ||
          next == '[' || next == '(') {
        in_.get();
        return iri(ns::kRdf, "type");
      }
    }
    return read_iri();
  }

  void predicate_object_list(const Term& subject) {
    for (;;) {
      Iri predicate = read_verb();
      skip_ws();
      for (;;) {
        Term object = read_object();
        triples_.emplace_back(subject, predicate, std::move(object));
        skip_ws();
        if (!in_.consume(',')) break;
        skip_ws();
      }
      if (!in_.consume(';')) return;
      skip_ws();
      while (in_.consume(';')) skip_ws();
      char c = in_.peek();
      if (c == '.' || c == '\0') return;
    }
  }

  bool at_boolean(std::string_view word) const {
    if (!in_.at(word)) return false;
    char after = in_.peek(word.size());
    return !(is_pn_chars(after) || after == ':');
  }

  Term read_object() {
    char c = in_.peek();
    if (c == '[' || c == '(') in_.fail("blank node property lists and collections are not supported");
    if (in_.consume("_:")) return BlankNode{in_.read_blank_label()};
    if (c == '"' || c == '\'') return read_rdf_literal();
    if (is_digit(c) || c == '+' || c == '-' || (c == '.' && is_digit(in_.peek(1)))) {
      return read_numeric();
    }
    if (at_boolean("true") || at_boolean("false")) {
      std::string word = in_.peek() == 't' ? "true" : "false";
      for (std::size_t i = 0; i < word.size(); ++i) in_.get();
      return Literal(word, iri(ns::kXsd, "boolean"));
    }
    return read_iri();
  }

  Term read_rdf_literal() {
    char quote = in_.get();
    bool long_form = false;
    if (in_.peek() == quote && in_.peek(1) == quote) {
      in_.get();
      in_.get();
      long_form = true;
    }
    std::string lexical = in_.read_string(quote, long_form);
    if (in_.consume("^^")) {
      Cursor::Mark at = in_.mark();
      Iri datatype = read_iri();
      if (datatype == iri(ns::kRdf, "langString")) {
        Cursor::fail_at("rdf:langString literal without language tag", at);
      }
      return Literal(std::move(lexical), std::move(datatype));
    }
    if (in_.consume('@')) return Literal::lang_string(std::move(lexical), in_.read_langtag());
    return Literal(std::move(lexical));
  }

  Term read_numeric() {
    std::string lexical;
    if (in_.peek() == '+' || in_.peek() == '-') lexical += in_.get();
    bool int_digits = false, frac_digits = false;
    while (is_digit(in_.peek())) lexical += in_.get(), int_digits = true;
    if (in_.peek() == '.' && is_digit(in_.peek(1))) {
      lexical += in_.get();
      while (is_digit(in_.peek())) lexical += in_.get(), frac_digits = true;
    } else if (in_.peek() == '.' && int_digits && (in_.peek(1) == 'e' || in_.peek(1) == 'E')) {
      lexical += in_.get();
    }
    if (!int_digits && !frac_digits) in_.fail("malformed numeric literal");
    if (in_.peek() == 'e' || in_.peek() == 'E') {
      lexical += in_.get();
      if (in_.peek() == '+' || in_.peek() == '-') lexical += in_.get();
      if (!is_digit(in_.peek())) in_.fail("malformed exponent");
      while (is_digit(in_.peek())) lexical += in_.get();
      return Literal(std::move(lexical), iri(ns::kXsd, "double"));
    }
    if (lexical.find('.') != std::string::npos) {
      return Literal(std::move(lexical), iri(ns::kXsd, "decimal"));
    }
    return Literal(std::move(lexical), iri(ns::kXsd, "integer"));
  }

  Cursor in_;
  std::string base_;
  std::map<std::string, std::string> prefixes_;
  std::vector<Triple> triples_;
};

}  // namespace

std::string resolve_iri(std::string_view base, std::string_view reference) {
  UriParts r = split_uri(reference);
  UriParts b = split_uri(base);
  UriParts t;
  if (!r.scheme.empty()) {
    t = r;
    t.path = remove_dot_segments(r.path);
    return join(t);
  }
  t.scheme = b.scheme;
  if (r.has_authority) {
    t.has_authority = true;
    t.authority = r.authority;
    t.path = remove_dot_segments(r.path);
    t.has_query = r.has_query;
    t.query = r.query;
  } else {
    t.has_authority = b.has_authority;
    t.authority = b.authority;
    if (r.path.empty()) {
      t.path = b.path;
      t.has_query = r.has_query || b.has_query;
      t.query = r.has_query ? r.query : b.query;
    } else {
      t.path = r.path.front() == '/' ? remove_dot_segments(r.path)
                                     : remove_dot_segments(merge_paths(b, r.path));
      t.has_query = r.has_query;
      t.query = r.query;
    }
  }
  t.has_fragment = r.has_fragment;
  t.fragment = r.fragment;
  return join(t);
}

Graph parse_turtle_subset(std::string_view text, std::string_view base_iri) {
  return TurtleReader(text, base_iri).run();
}

}  // namespace kgmm::rdf
