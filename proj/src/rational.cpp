#include "au/rational.hpp"

#include <charconv>
#include <limits>

#include "au/error.hpp"

namespace au {

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

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    raise(ErrorCode::Overflow, "rational out of int64 range");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace

Rational Rational::reduced(__int128 n, __int128 d) {
  if (d == 0) raise(ErrorCode::Overflow, "zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) {
  *this = reduced(n, d);
}

Rational Rational::operator-() const { return reduced(-__int128(num_), den_); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::reduced(__int128(a.num_) * b.den_ + __int128(b.num_) * a.den_,
                           __int128(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::reduced(__int128(a.num_) * b.den_ - __int128(b.num_) * a.den_,
                           __int128(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::reduced(__int128(a.num_) * b.num_, __int128(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) raise(ErrorCode::Overflow, "division by zero");
  return Rational::reduced(__int128(a.num_) * b.den_, __int128(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  __int128 l = __int128(a.num_) * b.den_;
  __int128 r = __int128(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view s) {
  auto fail = [&]() -> Rational {
    raise(ErrorCode::ParseError, "bad rational '" + std::string(s) + "'");
  };
  std::int64_t n = 0, d = 1;
  auto slash = s.find('/');
  std::string_view ns = s.substr(0, slash);
  auto r1 = std::from_chars(ns.data(), ns.data() + ns.size(), n);
  if (r1.ec != std::errc() || r1.ptr != ns.data() + ns.size()) return fail();
  if (slash != std::string_view::npos) {
    std::string_view ds = s.substr(slash + 1);
    auto r2 = std::from_chars(ds.data(), ds.data() + ds.size(), d);
    if (r2.ec != std::errc() || r2.ptr != ds.data() + ds.size() || d == 0) return fail();
  }
  return Rational(n, d);
}

}  // namespace au
