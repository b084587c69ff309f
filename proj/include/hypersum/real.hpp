#pragma once

#include <compare>
#include <string>

#include <mpfr.h>

#include "hypersum/rational.hpp"

namespace hypersum {

/// Binary precision needed to carry `digits` significant decimal digits.
mpfr_prec_t digits_to_bits(int digits);

/// Owning MPFR value. Each value carries its own precision; binary operations
/// produce a result at the larger of the two operand precisions, rounded to
/// nearest. There is no global precision state.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(long value, mpfr_prec_t bits);
  Real(const Rational& value, mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  static Real pi(mpfr_prec_t bits);
  /// Euler-Mascheroni constant.
  static Real euler(mpfr_prec_t bits);
  /// 10^exponent.
  static Real pow10(long exponent, mpfr_prec_t bits);

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

  /// Scientific notation with `digits` significant digits, e.g.
  /// "1.6666666666666666666666666666666666666666666666667e+00".
  std::string str(int digits) const;
  /// Every significant digit the working precision carries.
  std::string str() const;
  /// Like str(digits) but rounded toward +infinity, for printing error bounds.
  std::string str_up(int digits) const;

  Real operator-() const;
  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator+=(const Rational& o);
  Real& operator*=(const Rational& o);

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b);

 private:
  mpfr_t value_;
};

Real abs(const Real& x);
Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);

}  // namespace hypersum
