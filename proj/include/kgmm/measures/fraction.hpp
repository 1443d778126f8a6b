#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace kgmm::measures {

// Non-negative-denominator rational kept in lowest terms. Scores are built
// from counts, so arithmetic stays exact unless an intermediate overflows
// 64 bits; in that case the value falls back to a 2^-52 approximation and
// exact() reports false.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);

  static Fraction ratio(std::size_t num, std::size_t den) {
    return Fraction(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  }
  // Nearest fraction with denominator 10^9, reduced. Used for thresholds.
  static Fraction from_decimal(double value);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool exact() const noexcept { return exact_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);

  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  static Fraction from_wide(__int128 num, __int128 den, bool exact);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  bool exact_ = true;
};

}  // namespace kgmm::measures
