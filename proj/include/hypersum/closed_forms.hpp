#pragma once

#include <optional>

#include "hypersum/hyper.hpp"
#include "hypersum/km.hpp"
#include "hypersum/rational.hpp"
#include "hypersum/special.hpp"

namespace hypersum {

/// A right-hand side that is exact whenever the parameters allow it.
/// `numeric` is always filled; for exact values its error bound is zero.
struct SumValue {
  std::optional<Rational> exact;
  NumericValue numeric;

  bool is_exact() const { return exact.has_value(); }
  static SumValue from_exact(const Rational& value, const PrecisionContext& ctx);
};

/// A series scaled by a rational constant: prefactor * F(spec; 1).
struct ScaledSpec {
  Rational prefactor;
  HyperSpec spec;
};

enum class CoefficientRoute { stirling, hyper };

// Terminating sums at argument 2.

/// 3F2(-top, a, d+1; 2a+1, d; 2)
HyperSpec f32_lhs(unsigned top, const Rational& a, const Rational& d);
/// 2F1(-top, a; 2a; 2)
HyperSpec f21_lhs(unsigned top, const Rational& a);

/// (1/2)_n / (a+1/2)_n, the value of f32_lhs(2n, a, d) for every admissible d.
Rational f32_even(unsigned n, const Rational& a, const Rational& d);
/// (1 - 2a/d)/(2a+1) * (3/2)_n / (a+3/2)_n, the value of f32_lhs(2n+1, a, d).
Rational f32_odd(unsigned n, const Rational& a, const Rational& d);
Rational f21_even(unsigned n, const Rational& a);
/// Always zero on its domain.
Rational f21_odd(unsigned n, const Rational& a);

// Unit-argument sums with integral parameter differences.

/// (r+2)F(r+1)(a, b, (d+m); c, (d); 1)
HyperSpec karlsson_minton_lhs(const Rational& a, const Rational& b, const Rational& c, const KMFamily& family);

/// Gamma(c)Gamma(c-a-b)/(Gamma(c-a)Gamma(c-b)) * sum_k (-1)^k (a)_k (b)_k C_k / (1+a+b-c)_k.
/// Exact when a or b is an integer, otherwise the gamma ratio goes through
/// log_gamma at the context precision.
SumValue karlsson_minton_rhs(const Rational& a, const Rational& b, const Rational& c, const KMFamily& family,
                             const PrecisionContext& ctx = {},
                             CoefficientRoute route = CoefficientRoute::stirling);

/// sum_{k>=1} (a)_k ((d+m))_k / ((c)_k ((d))_k k) written as a scaled unit-argument series.
ScaledSpec entry9_lhs(const Rational& a, const Rational& c, const KMFamily& family = {});

/// psi(c) - psi(c - a). Exact for integer a.
SumValue psi_difference(const Rational& a, const Rational& c, const PrecisionContext& ctx = {});

/// psi(c) - psi(c - a), requires c - a > 0.
SumValue entry9(const Rational& a, const Rational& c, const PrecisionContext& ctx = {});

/// psi(c) - psi(c-a) + sum_{k=1}^{m} (-1)^k (a)_k (k-1)! C_k / (1+a-c)_k, requires c - a > m.
SumValue entry9_extended(const Rational& a, const Rational& c, const KMFamily& family,
                         const PrecisionContext& ctx = {},
                         CoefficientRoute route = CoefficientRoute::stirling);

/// Single-pair form with the binomial coefficients written out.
SumValue entry9_r1(const Rational& a, const Rational& c, const Rational& d, unsigned m,
                   const PrecisionContext& ctx = {});

}  // namespace hypersum
