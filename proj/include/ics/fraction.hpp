#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace ics {

// Exact nonnegative-denominator rational used for epsilons and thresholds.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Fraction() = default;
  Fraction(std::int64_t n, std::int64_t d);

  // Accepts "a/b", decimal "0.05", or an integer.
  static Fraction parse(const std::string& text);
  // Nearest fraction with denominator <= 10^6.
  static Fraction from_double(double x);

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num) * b.den <=> static_cast<__int128>(b.num) * a.den;
  }
};

Fraction operator+(const Fraction& a, const Fraction& b);
Fraction operator-(const Fraction& a, const Fraction& b);
Fraction operator*(const Fraction& a, const Fraction& b);

}  // namespace ics
