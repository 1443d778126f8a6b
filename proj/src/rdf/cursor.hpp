#pragma once

// Character-level scanning shared by the N-Triples and Turtle readers.

#include <cstddef>
#include <string>
#include <string_view>

#include "kgmm/rdf/ntriples.hpp"

namespace kgmm::rdf::detail {

class Cursor {
 public:
  // Validates UTF-8 up front and skips a leading BOM.
  explicit Cursor(std::string_view text);

  bool eof() const noexcept { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const noexcept {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }
  char get();
  bool consume(char c);
  bool consume(std::string_view s);
  bool at(std::string_view s) const noexcept { return text_.substr(pos_).starts_with(s); }

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  struct Mark {
    std::size_t pos, line, column;
  };
  Mark mark() const noexcept { return {pos_, line_, column_}; }
  void reset(Mark m) noexcept { pos_ = m.pos, line_ = m.line, column_ = m.column; }

  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] static void fail_at(const std::string& message, Mark m);

  // Spaces and tabs only.
  void skip_blanks();
  // Skips to (not past) the next line break.
  void skip_comment();
  bool at_eol() const noexcept { return peek() == '\n' || peek() == '\r'; }
  void consume_eol();

  // Body of <...>; the opening '<' must already be consumed. Decodes \u and
  // \U escapes; the caller decides whether a relative result is acceptable.
  std::string read_iriref();
  // Body of a quoted string; the opening quote(s) must already be consumed.
  std::string read_string(char quote, bool long_form);
  // Tag after '@', lower-cased.
  std::string read_langtag();
  // Label after "_:".
  std::string read_blank_label();

 private:
  char32_t read_uchar();
  void advance_one();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

void append_utf8(std::string& out, char32_t cp);

}  // namespace kgmm::rdf::detail
