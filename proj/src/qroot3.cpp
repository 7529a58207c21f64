#include "au/qroot3.hpp"

#include <cmath>
#include <stdexcept>

namespace au {

std::string QRoot3::str() const {
  if (s.is_zero()) return r.str();
  return r.str() + (s.sign() < 0 ? " - " : " + ") +
         (s.sign() < 0 ? (-s).str() : s.str()) + "*sqrt(3)";
}

int sign(const QRoot3& x) {
  const int sr = x.r.sign();
  const int ss = x.s.sign();
  if (ss == 0) return sr;
  if (sr == 0) return ss;
  if (sr == ss) return sr;
  // Opposite signs: |r| vs |s|*sqrt(3), i.e. r^2 vs 3*s^2.
  Rational r2 = x.r * x.r;
  Rational s23 = x.s * x.s * Rational(3);
  auto c = r2 <=> s23;
  if (c == std::strong_ordering::equal) {
    // r^2 = 3 s^2 with s != 0 would make sqrt(3) rational.
    throw std::logic_error("sqrt(3) cannot be rational");
  }
  return (c == std::strong_ordering::greater) ? sr : ss;
}

std::strong_ordering cmp(const QRoot3& a, const QRoot3& b) {
  switch (sign(a - b)) {
    case -1: return std::strong_ordering::less;
    case 1: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

std::int64_t qr3_floor(const QRoot3& x) {
  static const double kRoot3 = 1.7320508075688772;
  double est = x.r.to_double() + x.s.to_double() * kRoot3;
  std::int64_t t = std::int64_t(std::floor(est)) - 2;
  // est is within a couple of ulp-scaled units; fix up exactly.
  int guard = 0;
  while (cmp(x, QRoot3(Rational(t + 1))) != std::strong_ordering::less) {
    ++t;
    if (++guard > 64) throw std::logic_error("qr3_floor estimate too far off");
  }
  while (cmp(x, QRoot3(Rational(t))) == std::strong_ordering::less) {
    --t;
    if (++guard > 64) throw std::logic_error("qr3_floor estimate too far off");
  }
  return t;
}

std::optional<int> screen_sign(const QRoot3& x) {
  // Crude outward-rounded interval: magnitude-scaled error bound on the
  // double evaluation. Good enough to be a screen; exactness comes from
  // sign().
  static const double kRoot3 = 1.7320508075688772;
  const double a = x.r.to_double();
  const double b = x.s.to_double() * kRoot3;
  const double v = a + b;
  const double err = (std::fabs(a) + std::fabs(b) + std::fabs(v)) * 1e-12 + 1e-300;
  if (v > err) return 1;
  if (v < -err) return -1;
  if (x.r.is_zero() && x.s.is_zero()) return 0;
  return std::nullopt;
}

}  // namespace au
