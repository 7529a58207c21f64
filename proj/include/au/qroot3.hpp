#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "au/rational.hpp"

namespace au {

// Element of Q[sqrt(3)]: r + s*sqrt(3) with exact rational coefficients.
// Comparisons never touch floating point; mixed-sign cases square both
// sides (valid because sqrt(3) is irrational, so r + s*sqrt(3) = 0 only
// when r = s = 0).
struct QRoot3 {
  Rational r;
  Rational s;

  QRoot3() = default;
  QRoot3(Rational rat) : r(rat) {}
  QRoot3(Rational rat, Rational coeff) : r(rat), s(coeff) {}

  friend QRoot3 operator+(const QRoot3& a, const QRoot3& b) {
    return {a.r + b.r, a.s + b.s};
  }
  friend QRoot3 operator-(const QRoot3& a, const QRoot3& b) {
    return {a.r - b.r, a.s - b.s};
  }
  QRoot3 operator-() const { return {-r, -s}; }

  friend bool operator==(const QRoot3&, const QRoot3&) = default;

  std::string str() const;
};

int sign(const QRoot3& x);
std::strong_ordering cmp(const QRoot3& a, const QRoot3& b);

// Exact integer floor, usable for ceil via -floor(-x).
std::int64_t qr3_floor(const QRoot3& x);

// Fast 64-bit screening: returns the sign when double-interval evaluation
// can separate the value from zero, nullopt otherwise. Never contradicts
// sign().
std::optional<int> screen_sign(const QRoot3& x);

}  // namespace au
