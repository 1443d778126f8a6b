#include "kgmm/rdf/literal_validation.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <string>

namespace kgmm::rdf {

namespace xsd {

namespace {

bool digit(char c) { return c >= '0' && c <= '9'; }

// Consumes one or more digits starting at i; returns the count.
std::size_t digits(std::string_view s, std::size_t& i) {
  std::size_t start = i;
  while (i < s.size() && digit(s[i])) ++i;
  return i - start;
}

bool two_digits(std::string_view s, std::size_t& i, int& value) {
  if (i + 2 > s.size() || !digit(s[i]) || !digit(s[i + 1])) return false;
  value = (s[i] - '0') * 10 + (s[i + 1] - '0');
  i += 2;
  return true;
}

// Optional sign already handled by the caller. Returns false on bad form.
bool unsigned_decimal(std::string_view s, std::size_t& i) {
  std::size_t whole = digits(s, i);
  std::size_t frac = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    frac = digits(s, i);
  }
  return whole + frac > 0;
}

struct YearValue {
  bool negative = false;
  int mod400 = 0;  // year modulo 400, non-negative
  std::int64_t value = 0;
  bool fits = true;
};

bool year(std::string_view s, std::size_t& i, YearValue& y) {
  if (i < s.size() && s[i] == '-') {
    y.negative = true;
    ++i;
  }
  std::size_t start = i;
  std::size_t n = digits(s, i);
  if (n < 4) return false;
  if (n > 4 && s[start] == '0') return false;
  for (std::size_t k = start; k < i; ++k) {
    y.mod400 = (y.mod400 * 10 + (s[k] - '0')) % 400;
    if (y.value > 100'000'000) y.fits = false;
    else y.value = y.value * 10 + (s[k] - '0');
  }
  if (y.negative) {
    y.mod400 = (400 - y.mod400) % 400;
    y.value = -y.value;
  }
  return true;
}

bool leap(const YearValue& y) {
  return y.mod400 == 0 || (y.mod400 % 4 == 0 && y.mod400 % 100 != 0);
}

int days_in_month(const YearValue& y, int month) {
  static constexpr std::array<int, 12> kDays{31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2 && leap(y)) return 29;
  return kDays[static_cast<std::size_t>(month - 1)];
}

// Timezone offset in minutes; consumes nothing if absent.
bool timezone(std::string_view s, std::size_t& i, int& offset_minutes) {
  offset_minutes = 0;
  if (i == s.size()) return true;
  if (s[i] == 'Z') {
    ++i;
    return true;
  }
  if (s[i] != '+' && s[i] != '-') return false;
  int sign = s[i] == '-' ? -1 : 1;
  ++i;
  int hh, mm;
  if (!two_digits(s, i, hh)) return false;
  if (i >= s.size() || s[i++] != ':') return false;
  if (!two_digits(s, i, mm)) return false;
  if (mm > 59 || hh > 14 || (hh == 14 && mm != 0)) return false;
  offset_minutes = sign * (hh * 60 + mm);
  return true;
}

struct DateParts {
  YearValue y;
  int month = 0, day = 0;
};

bool date_part(std::string_view s, std::size_t& i, DateParts& d) {
  if (!year(s, i, d.y)) return false;
  if (i >= s.size() || s[i++] != '-') return false;
  if (!two_digits(s, i, d.month) || d.month < 1 || d.month > 12) return false;
  if (i >= s.size() || s[i++] != '-') return false;
  if (!two_digits(s, i, d.day) || d.day < 1) return false;
  return d.day <= days_in_month(d.y, d.month);
}

struct TimeParts {
  int hour = 0, minute = 0, second = 0;
  double fraction = 0.0;
};

bool time_part(std::string_view s, std::size_t& i, TimeParts& t) {
  if (!two_digits(s, i, t.hour)) return false;
  if (i >= s.size() || s[i++] != ':') return false;
  if (!two_digits(s, i, t.minute)) return false;
  if (i >= s.size() || s[i++] != ':') return false;
  if (!two_digits(s, i, t.second)) return false;
  bool nonzero_fraction = false;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t start = i;
    if (digits(s, i) == 0) return false;
    double scale = 0.1;
    for (std::size_t k = start; k < i; ++k, scale /= 10) {
      t.fraction += (s[k] - '0') * scale;
      if (s[k] != '0') nonzero_fraction = true;
    }
  }
  if (t.minute > 59 || t.second > 59) return false;
  if (t.hour == 24) return t.minute == 0 && t.second == 0 && !nonzero_fraction;
  return t.hour < 24;
}

std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

}  // namespace

bool is_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  return digits(s, i) > 0 && i == s.size();
}

bool is_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  return unsigned_decimal(s, i) && i == s.size();
}

bool is_double(std::string_view s) {
  if (s == "INF" || s == "+INF" || s == "-INF" || s == "NaN") return true;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (!unsigned_decimal(s, i)) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    if (digits(s, i) == 0) return false;
  }
  return i == s.size();
}

bool is_boolean(std::string_view s) {
  return s == "true" || s == "false" || s == "1" || s == "0";
}

bool is_date(std::string_view s) {
  std::size_t i = 0;
  DateParts d;
  int tz;
  return date_part(s, i, d) && timezone(s, i, tz) && i == s.size();
}

bool is_date_time(std::string_view s) {
  std::size_t i = 0;
  DateParts d;
  TimeParts t;
  int tz;
  if (!date_part(s, i, d)) return false;
  if (i >= s.size() || s[i++] != 'T') return false;
  return time_part(s, i, t) && timezone(s, i, tz) && i == s.size();
}

bool is_g_year(std::string_view s) {
  std::size_t i = 0;
  YearValue y;
  int tz;
  return year(s, i, y) && timezone(s, i, tz) && i == s.size();
}

bool is_any_uri(std::string_view s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto u = static_cast<unsigned char>(s[i]);
    if (u <= 0x20 || u == 0x7F) return false;
    switch (s[i]) {
      case '<': case '>': case '"': case '{': case '}':
      case '|': case '\\': case '^': case '`':
        return false;
      case '%':
        if (i + 2 >= s.size() || !std::isxdigit(static_cast<unsigned char>(s[i + 1])) ||
            !std::isxdigit(static_cast<unsigned char>(s[i + 2]))) {
          return false;
        }
        break;
      default:
        break;
    }
  }
  return true;
}

std::optional<double> to_epoch_seconds(std::string_view s) {
  std::size_t i = 0;
  DateParts d;
  if (!date_part(s, i, d) || !d.y.fits) return std::nullopt;
  TimeParts t;
  if (i < s.size() && s[i] == 'T') {
    ++i;
    if (!time_part(s, i, t)) return std::nullopt;
  }
  int tz = 0;
  if (!timezone(s, i, tz) || i != s.size()) return std::nullopt;
  std::int64_t days = days_from_civil(d.y.value, static_cast<unsigned>(d.month),
                                      static_cast<unsigned>(d.day));
  double seconds = static_cast<double>(days) * 86400.0 + t.hour * 3600.0 + t.minute * 60.0 +
                   t.second + t.fraction;
  return seconds - tz * 60.0;
}

}  // namespace xsd

LiteralVerdict validate_literal(const Literal& literal) {
  using Check = bool (*)(std::string_view);
  static const std::map<std::string, Check> kChecks = [] {
    std::string x(ns::kXsd);
    return std::map<std::string, Check>{
        {x + "string", [](std::string_view) { return true; }},
        {x + "integer", &xsd::is_integer},
        {x + "decimal", &xsd::is_decimal},
        {x + "double", &xsd::is_double},
        {x + "boolean", &xsd::is_boolean},
        {x + "date", &xsd::is_date},
        {x + "dateTime", &xsd::is_date_time},
        {x + "anyURI", &xsd::is_any_uri},
        {x + "gYear", &xsd::is_g_year},
    };
  }();
  auto it = kChecks.find(literal.datatype().str());
  if (it == kChecks.end()) return LiteralVerdict::Unknown;
  return it->second(literal.lexical()) ? LiteralVerdict::WellFormed : LiteralVerdict::IllFormed;
}

}  // namespace kgmm::rdf
