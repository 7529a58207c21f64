#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace au {

// Exact rational with int64 storage. All intermediate products run in
// __int128; results that do not fit back into int64 after reduction throw
// Error(Overflow) instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t n) : num_(n), den_(1) {}
  Rational(std::int64_t n, std::int64_t d);

  static Rational reduced(__int128 n, __int128 d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0); }

  Rational operator-() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

  std::int64_t floor() const;
  double to_double() const { return double(num_) / double(den_); }

  std::string str() const;                     // "3/10", "-1/2", "2"
  static Rational parse(std::string_view s);   // Error(ParseError)

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace au
