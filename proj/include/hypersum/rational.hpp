#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hypersum {

using Integer = mpz_class;

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : value_(v) {}
  Rational(long v) : value_(v) {}
  Rational(long long v) : value_(Integer(std::to_string(v))) {}
  Rational(unsigned v) : value_(v) {}
  Rational(unsigned long v) : value_(v) {}
  Rational(const Integer& v) : value_(v) {}
  Rational(const Integer& num, const Integer& den);
  explicit Rational(const mpq_class& v) : value_(v) { value_.canonicalize(); }

  /// Parses "p/q" or "p" (optional leading sign, decimal digits only).
  static Rational parse(std::string_view text);

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  Integer num() const { return value_.get_num(); }
  Integer den() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  /// True for 0, -1, -2, ...
  bool is_nonpositive_integer() const { return is_integer() && sign() <= 0; }
  /// Value as a machine integer; requires is_integer() and that it fits.
  long to_long() const;
  double to_double() const { return value_.get_d(); }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational abs(const Rational& r);
/// r^e for a (possibly negative) integer exponent.
Rational pow(const Rational& r, long e);
/// Largest integer <= r.
Integer floor(const Rational& r);
/// Smallest integer >= r.
Integer ceil(const Rational& r);

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace hypersum
