#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace cssgames {

// Exact small rational; success fractions here are dyadic, so int64 is ample.
struct Fraction {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Fraction of(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("fraction denominator must be positive");
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return Fraction{num / g, den / g};
  }

  double to_double() const { return double(num) / double(den); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  friend bool operator==(const Fraction& a, const Fraction& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }

  static Fraction reduce128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num, b = den;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a == 0) a = 1;
    num /= a;
    den /= a;
    constexpr __int128 lim = INT64_MAX;
    if (num > lim || num < -lim || den > lim)
      throw std::overflow_error("rational arithmetic overflow");
    return Fraction{std::int64_t(num), std::int64_t(den)};
  }

  friend Fraction operator+(const Fraction& a, const Fraction& b) {
    return reduce128((__int128)a.num * b.den + (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Fraction operator-(const Fraction& a, const Fraction& b) {
    return reduce128((__int128)a.num * b.den - (__int128)b.num * a.den,
                     (__int128)a.den * b.den);
  }
  friend Fraction operator*(const Fraction& a, const Fraction& b) {
    return reduce128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Fraction operator/(const Fraction& a, const Fraction& b) {
    if (b.num == 0) throw std::domain_error("division by zero");
    return reduce128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Fraction operator-() const { return Fraction{-num, den}; }
  bool is_zero() const { return num == 0; }
};

}  // namespace cssgames
