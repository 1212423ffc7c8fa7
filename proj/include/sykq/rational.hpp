#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sykq {

// Exact rational arithmetic on int64 numerator/denominator, normalized so the
// denominator is positive and gcd(num, den) == 1.  Intermediate products go
// through __int128; overflow past int64 after reduction throws.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  void assign(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw std::overflow_error("Rational: overflow");
    num = static_cast<std::int64_t>(n);
    den = static_cast<std::int64_t>(d);
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) { __int128 t = a % b; a = b; b = t; }
    return a < 0 ? -a : a;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
             static_cast<__int128>(a.den) * b.den);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<__int128>(a.num) * b.den - static_cast<__int128>(b.num) * a.den,
             static_cast<__int128>(a.den) * b.den);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<__int128>(a.num) * b.num, static_cast<__int128>(a.den) * b.den);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num == 0) throw std::domain_error("Rational: divide by zero");
    Rational r;
    r.assign(static_cast<__int128>(a.num) * b.den, static_cast<__int128>(a.den) * b.num);
    return r;
  }
  Rational operator-() const { Rational r; r.num = -num; r.den = den; return r; }
  Rational& operator+=(const Rational& b) { *this = *this + b; return *this; }
  Rational& operator-=(const Rational& b) { *this = *this - b; return *this; }
  Rational& operator*=(const Rational& b) { *this = *this * b; return *this; }
  Rational& operator/=(const Rational& b) { *this = *this / b; return *this; }

  bool operator==(const Rational& b) const { return num == b.num && den == b.den; }
  bool operator!=(const Rational& b) const { return !(*this == b); }

  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }
};

}  // namespace sykq
