#include "kgmm/measures/fraction.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kgmm::measures {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Fraction::Fraction(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("fraction with zero denominator");
  *this = from_wide(num, den, true);
}

Fraction Fraction::from_wide(__int128 num, __int128 den, bool exact) {
  if (den < 0) num = -num, den = -den;
  __int128 g = gcd128(num, den);
  if (g > 1) num /= g, den /= g;
  Fraction f;
  if (num > kMax || num < -kMax || den > kMax) {
    double v = static_cast<double>(num) / static_cast<double>(den);
    constexpr std::int64_t kScale = std::int64_t{1} << 52;
    f = from_wide(static_cast<__int128>(std::llround(v * static_cast<double>(kScale))), kScale,
                  false);
    return f;
  }
  f.num_ = static_cast<std::int64_t>(num);
  f.den_ = static_cast<std::int64_t>(den);
  f.exact_ = exact;
  return f;
}

Fraction Fraction::from_decimal(double value) {
  constexpr std::int64_t kScale = 1'000'000'000;
  return Fraction(std::llround(value * static_cast<double>(kScale)), kScale);
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_, a.exact_ && b.exact_);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<__int128>(a.num_) * b.den_ -
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_, a.exact_ && b.exact_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<__int128>(a.num_) * b.num_,
                             static_cast<__int128>(a.den_) * b.den_, a.exact_ && b.exact_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num_ == 0) throw std::domain_error("fraction division by zero");
  return Fraction::from_wide(static_cast<__int128>(a.num_) * b.den_,
                             static_cast<__int128>(a.den_) * b.num_, a.exact_ && b.exact_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace kgmm::measures
