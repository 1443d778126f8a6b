#include "cursor.hpp"

#include <cctype>

namespace kgmm::rdf::detail {

namespace {

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return c - 'A' + 10;
}

bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// PN_CHARS_U; every non-ASCII byte is accepted as part of PN_CHARS_BASE.
bool is_pn_chars_u(char c) {
  return is_ascii_alpha(c) || c == '_' || static_cast<unsigned char>(c) >= 0x80;
}

bool is_pn_chars(char c) { return is_pn_chars_u(c) || c == '-' || is_digit(c); }

// Returns the byte length of the UTF-8 sequence at s[i], or 0 if invalid.
std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return 1;
  std::size_t len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) len = 2, cp = b0 & 0x1F;
  else if ((b0 & 0xF0) == 0xE0) len = 3, cp = b0 & 0x0F;
  else if ((b0 & 0xF8) == 0xF0) len = 4, cp = b0 & 0x07;
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return 0;
    cp = (cp << 6) | (b & 0x3F);
  }
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
  return len;
}

}  // namespace

void append_utf8(std::string& out, char32_t cp) {
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

Cursor::Cursor(std::string_view text) : text_(text) {
  if (text_.starts_with("\xEF\xBB\xBF")) text_.remove_prefix(3);
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < text_.size();) {
    std::size_t len = utf8_sequence_length(text_, i);
    if (len == 0) throw ParseError("invalid UTF-8 byte sequence", line, column);
    if (text_[i] == '\n') ++line, column = 1;
    else ++column;
    i += len;
  }
}

void Cursor::advance_one() {
  char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
    ++column_;
  }
}

char Cursor::get() {
  if (eof()) fail("unexpected end of input");
  char c = text_[pos_];
  advance_one();
  return c;
}

bool Cursor::consume(char c) {
  if (peek() != c || eof()) return false;
  advance_one();
  return true;
}

bool Cursor::consume(std::string_view s) {
  if (!at(s)) return false;
  for (std::size_t i = 0; i < s.size(); ++i) advance_one();
  return true;
}

void Cursor::fail(const std::string& message) const {
  throw ParseError(message, line_, column_);
}

void Cursor::fail_at(const std::string& message, Mark m) {
  throw ParseError(message, m.line, m.column);
}

void Cursor::skip_blanks() {
  while (!eof() && (peek() == ' ' || peek() == '\t')) advance_one();
}

void Cursor::skip_comment() {
  while (!eof() && !at_eol()) advance_one();
}

void Cursor::consume_eol() {
  while (!eof() && at_eol()) advance_one();
}

char32_t Cursor::read_uchar() {
  // Positioned just after the backslash.
  Mark start = mark();
  char kind = get();
  int digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
  if (digits == 0) fail_at("invalid escape sequence", start);
  char32_t cp = 0;
  for (int i = 0; i < digits; ++i) {
    char h = peek();
    if (!is_hex(h)) fail("expected hex digit in \\" + std::string(1, kind) + " escape");
    get();
    cp = (cp << 4) | static_cast<char32_t>(hex_value(h));
  }
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    fail_at("escape does not denote a Unicode scalar value", start);
  }
  return cp;
}

std::string Cursor::read_iriref() {
  std::string out;
  for (;;) {
    if (eof()) fail("unterminated IRI");
    char c = peek();
    if (c == '>') {
      get();
      return out;
    }
    if (c == '\\') {
      get();
      append_utf8(out, read_uchar());
      continue;
    }
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
        c == '`') {
      fail("character not allowed in IRI");
    }
    out += get();
  }
}

std::string Cursor::read_string(char quote, bool long_form) {
  std::string out;
  for (;;) {
    if (eof()) fail("unterminated literal");
    char c = peek();
    if (c == quote) {
      if (!long_form) {
        get();
        return out;
      }
      if (peek(1) == quote && peek(2) == quote && peek(3) != quote) {
        get(), get(), get();
        return out;
      }
      out += get();
      continue;
    }
    if (!long_form && (c == '\n' || c == '\r')) fail("unterminated literal");
    if (c == '\\') {
      get();
      char e = peek();
      switch (e) {
        case 't': out += '\t'; break;
        case 'b': out += '\b'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case 'f': out += '\f'; break;
        case '"': out += '"'; break;
        case '\'': out += '\''; break;
        case '\\': out += '\\'; break;
        case 'u':
        case 'U':
          append_utf8(out, read_uchar());
          continue;
        default:
          fail("invalid escape sequence in literal");
      }
      get();
      continue;
    }
    out += get();
  }
}

std::string Cursor::read_langtag() {
  Mark start = mark();
  std::string tag;
  while (is_ascii_alpha(peek())) tag += get();
  if (tag.empty()) fail_at("empty language tag", start);
  while (peek() == '-' && std::isalnum(static_cast<unsigned char>(peek(1)))) {
    tag += get();
    while (std::isalnum(static_cast<unsigned char>(peek()))) tag += get();
  }
  for (char& c : tag) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return tag;
}

std::string Cursor::read_blank_label() {
  char first = peek();
  if (eof() || !(is_pn_chars_u(first) || is_digit(first))) fail("invalid blank node label");
  std::string label;
  label += get();
  Mark last_good = mark();
  std::size_t good_len = label.size();
  while (!eof() && (is_pn_chars(peek()) || peek() == '.')) {
    char c = get();
    label += c;
    if (c != '.') {
      last_good = mark();
      good_len = label.size();
    }
  }
  // A trailing '.' terminates the statement rather than belonging to the label.
  reset(last_good);
  label.resize(good_len);
  return label;
}

}  // namespace kgmm::rdf::detail
