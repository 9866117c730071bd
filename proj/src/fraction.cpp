#include "ics/fraction.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ics {

Fraction::Fraction(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::invalid_argument("zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = std::gcd(n, d);
  num = g ? n / g : n;
  den = g ? d / g : d;
}

Fraction Fraction::parse(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos)
      return Fraction(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Fraction(std::stoll(text), 1);
    // Exact decimal: digits after the point set the power of ten.
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
    return Fraction(std::stoll(digits), den);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a fraction: " + text);
  }
}

Fraction Fraction::from_double(double x) {
  // Continued fraction expansion with a bounded denominator.
  const std::int64_t max_den = 1000000;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    const double a = std::floor(r);
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t p2 = ai * p1 + p0;
    const std::int64_t q2 = ai * q1 + q0;
    if (q2 > max_den) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (r - a < 1e-12) break;
    r = 1.0 / (r - a);
  }
  return Fraction(p1, q1);
}

std::string Fraction::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Fraction operator+(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.den + b.num * a.den, a.den * b.den); }
Fraction operator-(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.den - b.num * a.den, a.den * b.den); }
Fraction operator*(const Fraction& a, const Fraction& b) { return Fraction(a.num * b.num, a.den * b.den); }

}  // namespace ics
