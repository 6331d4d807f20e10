#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <string>

#include "cw/errors.hpp"

namespace cw {

namespace detail {
inline int64_t checked_narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) fail(Err::ArithmeticOverflow, "int64 overflow");
  return static_cast<int64_t>(v);
}
} // namespace detail

inline int64_t mul_i64(int64_t a, int64_t b) {
  return detail::checked_narrow(static_cast<__int128>(a) * b);
}
inline int64_t add_i64(int64_t a, int64_t b) {
  return detail::checked_narrow(static_cast<__int128>(a) + b);
}

/// Exact rational on int64 with overflow-checked arithmetic.  Always kept
/// canonical: gcd(num,den) = 1, den > 0.
struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) fail(Err::ArithmeticOverflow, "zero denominator");
    if (den < 0) { num = -num; den = -den; }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Rat operator+(const Rat& a, const Rat& b) {
    int64_t g = std::gcd(a.den, b.den);
    int64_t bd = b.den / g;
    __int128 n = static_cast<__int128>(a.num) * bd + static_cast<__int128>(b.num) * (a.den / g);
    __int128 d = static_cast<__int128>(a.den) * bd;
    Rat r;
    r.num = detail::checked_narrow(n);
    r.den = detail::checked_narrow(d);
    r.normalize();
    return r;
  }
  friend Rat operator-(const Rat& a) { Rat r; r.num = -a.num; r.den = a.den; return r; }
  friend Rat operator-(const Rat& a, const Rat& b) { return a + (-b); }
  friend Rat operator*(const Rat& a, const Rat& b) {
    int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    Rat r;
    r.num = mul_i64(a.num / g1, b.num / g2);
    r.den = mul_i64(a.den / g2, b.den / g1);
    return r;
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num == 0) fail(Err::ArithmeticOverflow, "division by zero");
    Rat inv;
    inv.num = b.den;
    inv.den = b.num;
    if (inv.den < 0) { inv.num = -inv.num; inv.den = -inv.den; }
    return a * inv;
  }
  Rat& operator+=(const Rat& b) { *this = *this + b; return *this; }
  Rat& operator-=(const Rat& b) { *this = *this - b; return *this; }
  Rat& operator*=(const Rat& b) { *this = *this * b; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Value in Q/Z: canonical representative 0 <= num/den < 1, reduced.
struct QZ {
  int64_t num = 0;
  int64_t den = 1;

  QZ() = default;
  QZ(int64_t n, int64_t d) {
    if (d <= 0) fail(Err::ArithmeticOverflow, "QZ denominator must be positive");
    int64_t r = n % d;
    if (r < 0) r += d;
    int64_t g = std::gcd(r, d);
    num = r / g;
    den = d / g;
  }

  bool is_zero() const { return num == 0; }

  friend QZ operator+(const QZ& a, const QZ& b) {
    int64_t g = std::gcd(a.den, b.den);
    int64_t d = mul_i64(a.den / g, b.den);
    int64_t n = add_i64(mul_i64(a.num, b.den / g), mul_i64(b.num, a.den / g));
    return QZ(n, d);
  }
  friend QZ operator-(const QZ& a, const QZ& b) {
    int64_t g = std::gcd(a.den, b.den);
    int64_t d = mul_i64(a.den / g, b.den);
    int64_t n = mul_i64(a.num, b.den / g) - mul_i64(b.num, a.den / g);
    return QZ(n, d);
  }
  friend QZ operator-(const QZ& a) { return QZ(-a.num, a.den); }
  /// n-fold sum of a (n may be negative or zero).
  friend QZ operator*(int64_t n, const QZ& a) {
    int64_t m = n % a.den;
    return QZ(mul_i64(m, a.num), a.den);
  }
  QZ& operator+=(const QZ& b) { *this = *this + b; return *this; }

  friend bool operator==(const QZ& a, const QZ& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const QZ& a, const QZ& b) { return !(a == b); }
  friend bool operator<(const QZ& a, const QZ& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

/// Parses "p/q" or "p" into a rational.
Rat parse_rat(const std::string& s);

inline uint64_t hash_mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

} // namespace cw

template <>
struct std::hash<cw::QZ> {
  size_t operator()(const cw::QZ& q) const {
    return cw::hash_mix(std::hash<int64_t>()(q.num), static_cast<uint64_t>(q.den));
  }
};
