#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypersum/rational.hpp"

namespace hypersum {

/// Polynomial in x truncated at x^order, with exact coefficients. Every ring
/// operation discards powers above the order of its result; mixing two
/// orders yields the smaller one.
class TruncatedSeries {
 public:
  static constexpr std::size_t kDefaultOrder = 24;

  explicit TruncatedSeries(std::size_t order = kDefaultOrder);
  explicit TruncatedSeries(std::vector<Rational> coeffs);

  static TruncatedSeries constant(const Rational& c, std::size_t order);
  /// c * x^power (zero when power > order).
  static TruncatedSeries monomial(const Rational& c, std::size_t power, std::size_t order);
  /// exp(scale * x).
  static TruncatedSeries exponential(const Rational& scale, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  bool is_zero() const;

  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const TruncatedSeries& o);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const TruncatedSeries& b) { return a *= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }
  TruncatedSeries operator-() const;

  /// Multiplies by x^power, dropping what falls past the order.
  TruncatedSeries shifted(std::size_t power) const;
  /// Substitutes x -> c * x^power.
  TruncatedSeries substitute(const Rational& c, std::size_t power = 1) const;
  /// this(inner(x)); inner must have a zero constant term.
  TruncatedSeries compose(const TruncatedSeries& inner) const;
  /// Term-wise derivative. The result has order - 1 (order 0 stays 0).
  TruncatedSeries derivative() const;
  /// Same coefficients cut or zero-padded to a new order.
  TruncatedSeries with_order(std::size_t order) const;
  /// Sum of c_k * x^k.
  Rational evaluate(const Rational& x) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// Index of the first differing coefficient over the common order.
std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b);

}  // namespace hypersum
