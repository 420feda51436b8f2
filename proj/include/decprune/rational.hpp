#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "decprune/errors.hpp"

namespace decprune {

using i64 = std::int64_t;
using i128 = __int128;

// Exact rational on int64, normalized, positive denominator. All parameter
// arithmetic in the library is exact; there are no floating-point tolerances.
struct Rat {
  i64 num = 0;
  i64 den = 1;

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) : num(n), den(d) {
    require(d != 0, err::kConstruction, "rational with zero denominator");
    normalize();
  }

  void normalize() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num == 0) den = 1;
  }

  friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
  friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
  friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) {
    require(b.num != 0, err::kConstruction, "rational division by zero");
    return Rat(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(Rat a, Rat b) { return !(a == b); }
  friend bool operator<(Rat a, Rat b) { return (i128)a.num * b.den < (i128)b.num * a.den; }
  friend bool operator<=(Rat a, Rat b) { return (i128)a.num * b.den <= (i128)b.num * a.den; }
  friend bool operator>(Rat a, Rat b) { return b < a; }
  friend bool operator>=(Rat a, Rat b) { return b <= a; }

  Rat inv() const { return Rat(den, num); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

// ceil(r * mult), r >= 0.
inline i64 ceil_mul(Rat r, i64 mult) {
  i128 n = (i128)r.num * mult;
  i128 d = r.den;
  i128 q = n / d;
  if (n % d != 0 && n > 0) q += 1;
  return (i64)q;
}

// Compare a * b vs c * d exactly in 128 bits.
inline bool mul_ge(i64 a, i64 b, i64 c, i64 d) { return (i128)a * b >= (i128)c * d; }
inline bool mul_gt(i64 a, i64 b, i64 c, i64 d) { return (i128)a * b > (i128)c * d; }

inline i64 ceil_log2(i64 x) {
  i64 r = 0;
  i64 p = 1;
  while (p < x) {
    p <<= 1;
    ++r;
  }
  return r;
}

// log2-style quantities with floor 1, as the algorithms' round formulas use them.
inline i64 log2_floor1(i64 x) { return ceil_log2(x) < 1 ? 1 : ceil_log2(x); }

}  // namespace decprune
