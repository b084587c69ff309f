#include "hypersum/closed_forms.hpp"

#include <string>
#include <utility>

#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"

namespace hypersum {

SumValue SumValue::from_exact(const Rational& value, const PrecisionContext& ctx) {
  const mpfr_prec_t bits = ctx.working_bits();
  return SumValue{value, NumericValue{Real(value, bits), Real(bits), 0, ctx.digits}};
}

namespace {

const Rational kHalf(1, 2);

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// The closed forms are analytic in a, so they need every lower parameter to stay
// nonzero across the full range k <= top. An upper parameter that ends the
// series early does not help: the truncated sum is a different function of a.
void require_lhs_finite(const HyperSpec& spec, unsigned top) {
  for (const auto& b : spec.lower) {
    if (b.is_nonpositive_integer() && -b < Rational(top)) {
      throw DomainError("lower parameter " + b.str() + " vanishes within the summation range k <= " +
                        std::to_string(top));
    }
  }
}

Rational sign_of_power(unsigned k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

std::vector<Rational> km_coeffs(const KMFamily& family, CoefficientRoute route) {
  return route == CoefficientRoute::stirling ? km_coefficients_stirling(family).coeffs
                                             : km_coefficients_hyper(family).coeffs;
}

// Gamma(x)/Gamma(y) for an integer difference x - y.
Rational gamma_ratio_integer_gap(const Rational& x, const Rational& y) {
  const long n = (x - y).to_long();
  if (n >= 0) return pochhammer(y, static_cast<unsigned>(n));
  return Rational(1) / pochhammer(x, static_cast<unsigned>(-n));
}

// ln|Gamma(x)| and the sign of Gamma(x) for rational x off the poles.
std::pair<Real, int> signed_log_gamma(const Rational& x, const PrecisionContext& ctx) {
  if (x.sign() > 0) return {log_gamma(x, ctx), 1};
  // Gamma(x) = Gamma(x + n) / (x)_n
  const unsigned n = static_cast<unsigned>(Integer(-floor(x)).get_ui()) + 1;
  const Rational shift = pochhammer(x, n);
  Real lg = log_gamma(x + Rational(n), ctx);
  lg -= log(Real(abs(shift), ctx.working_bits()));
  return {lg, shift.sign()};
}

// sum_{j<n} 1/(x + j), the rational part of psi(x) = psi(x + n) - ...
Rational psi_shift(const Rational& x, unsigned n) {
  Rational s;
  for (unsigned j = 0; j < n; ++j) s += Rational(1) / (x + Rational(j));
  return s;
}

// psi(x) for rational x off the poles, lifting negative x exactly.
std::pair<Real, Rational> psi_split(const Rational& x, const PrecisionContext& ctx) {
  if (x.sign() > 0) return {digamma(x, ctx), Rational(0)};
  const unsigned n = static_cast<unsigned>(Integer(-floor(x)).get_ui()) + 1;
  return {digamma(x + Rational(n), ctx), -psi_shift(x, n)};
}

// Relative accuracy delivered by log_gamma/digamma at this context, with
// margin for the handful of roundings that follow.
Real special_accuracy(const PrecisionContext& ctx) {
  return Real::pow10(-(ctx.digits + ctx.guard) + 2, ctx.working_bits());
}

}  // namespace

HyperSpec f32_lhs(unsigned top, const Rational& a, const Rational& d) {
  return HyperSpec{{-Rational(top), a, d + 1}, {2 * a + 1, d}};
}

HyperSpec f21_lhs(unsigned top, const Rational& a) { return HyperSpec{{-Rational(top), a}, {2 * a}}; }

Rational f32_even(unsigned n, const Rational& a, const Rational& d) {
  require(!d.is_nonpositive_integer(), "d must not be a non-positive integer");
  require_lhs_finite(f32_lhs(2 * n, a, d), 2 * n);
  const Rational den = pochhammer(a + kHalf, n);
  require(!den.is_zero(), "(a+1/2)_n vanishes");
  return pochhammer(kHalf, n) / den;
}

Rational f32_odd(unsigned n, const Rational& a, const Rational& d) {
  require(!d.is_nonpositive_integer(), "d must not be a non-positive integer");
  require(2 * a + 1 != Rational(0), "a must not be -1/2");
  require_lhs_finite(f32_lhs(2 * n + 1, a, d), 2 * n + 1);
  const Rational den = pochhammer(a + Rational(3, 2), n);
  require(!den.is_zero(), "(a+3/2)_n vanishes");
  return (Rational(1) - 2 * a / d) / (2 * a + 1) * pochhammer(Rational(3, 2), n) / den;
}

Rational f21_even(unsigned n, const Rational& a) {
  require_lhs_finite(f21_lhs(2 * n, a), 2 * n);
  const Rational den = pochhammer(a + kHalf, n);
  require(!den.is_zero(), "(a+1/2)_n vanishes");
  return pochhammer(kHalf, n) / den;
}

Rational f21_odd(unsigned n, const Rational& a) {
  require_lhs_finite(f21_lhs(2 * n + 1, a), 2 * n + 1);
  return 0;
}

HyperSpec karlsson_minton_lhs(const Rational& a, const Rational& b, const Rational& c, const KMFamily& family) {
  HyperSpec spec{{a, b}, {c}};
  for (const auto& p : family.pairs()) {
    spec.upper.push_back(p.d + Rational(p.m));
    spec.lower.push_back(p.d);
  }
  return spec;
}

SumValue karlsson_minton_rhs(const Rational& a, const Rational& b, const Rational& c, const KMFamily& family,
                             const PrecisionContext& ctx, CoefficientRoute route) {
  const unsigned m = family.total();
  const Rational excess = c - a - b;
  if (excess <= Rational(m)) {
    throw ConvergenceDomainError("requires c - a - b > m, got c - a - b = " + excess.str() +
                                 ", m = " + std::to_string(m));
  }
  for (const auto& [name, arg] : {std::pair{"c", c}, {"c-a", c - a}, {"c-b", c - b}}) {
    if (arg.is_nonpositive_integer()) throw PoleError(std::string("gamma argument ") + name + " = " + arg.str());
  }

  const auto coeffs = km_coeffs(family, route);
  const Rational base = 1 + a + b - c;
  Rational finite;
  for (unsigned k = 0; k <= m; ++k) {
    const Rational top = pochhammer(a, k) * pochhammer(b, k) * coeffs[k];
    if (top.is_zero()) continue;
    const Rational bottom = pochhammer(base, k);
    if (bottom.is_zero()) throw PoleError("(1+a+b-c)_k vanishes at k = " + std::to_string(k));
    finite += sign_of_power(k) * top / bottom;
  }

  if (a.is_integer()) {
    return SumValue::from_exact(
        gamma_ratio_integer_gap(c, c - a) * gamma_ratio_integer_gap(excess, c - b) * finite, ctx);
  }
  if (b.is_integer()) {
    return SumValue::from_exact(
        gamma_ratio_integer_gap(c, c - b) * gamma_ratio_integer_gap(excess, c - a) * finite, ctx);
  }

  const auto [lg_c, s_c] = signed_log_gamma(c, ctx);
  const auto [lg_e, s_e] = signed_log_gamma(excess, ctx);
  const auto [lg_ca, s_ca] = signed_log_gamma(c - a, ctx);
  const auto [lg_cb, s_cb] = signed_log_gamma(c - b, ctx);
  Real value = exp(lg_c + lg_e - lg_ca - lg_cb);
  value *= Rational(s_c * s_e * s_ca * s_cb) * finite;
  Real bound = abs(value) * special_accuracy(ctx);
  return SumValue{std::nullopt, NumericValue{value, bound, 0, ctx.digits}};
}

ScaledSpec entry9_lhs(const Rational& a, const Rational& c, const KMFamily& family) {
  // k = j + 1: (x)_{j+1} = x (x+1)_j and 1/(j+1) = (1)_j/(2)_j
  ScaledSpec out{a / c, HyperSpec{{a + 1, Rational(1), Rational(1)}, {c + 1, Rational(2)}}};
  for (const auto& p : family.pairs()) {
    out.prefactor *= (p.d + Rational(p.m)) / p.d;
    out.spec.upper.push_back(p.d + Rational(p.m) + 1);
    out.spec.lower.push_back(p.d + 1);
  }
  return out;
}

SumValue psi_difference(const Rational& a, const Rational& c, const PrecisionContext& ctx) {
  if (c.is_nonpositive_integer() || (c - a).is_nonpositive_integer()) {
    throw PoleError("psi argument is a non-positive integer");
  }
  if (a.is_integer()) {
    const long n = a.to_long();
    if (n >= 0) return SumValue::from_exact(psi_diff_exact(static_cast<unsigned>(n), c), ctx);
    // psi(c) - psi(c + |a|) = -sum_{j<|a|} 1/(c + j)
    return SumValue::from_exact(-psi_shift(c, static_cast<unsigned>(-n)), ctx);
  }
  const auto [psi_c, shift_c] = psi_split(c, ctx);
  const auto [psi_ca, shift_ca] = psi_split(c - a, ctx);
  Real value = psi_c - psi_ca;
  value += shift_c - shift_ca;
  Real bound = (Real(1, ctx.working_bits()) + abs(psi_c) + abs(psi_ca)) * special_accuracy(ctx);
  return SumValue{std::nullopt, NumericValue{value, bound, 0, ctx.digits}};
}

SumValue entry9(const Rational& a, const Rational& c, const PrecisionContext& ctx) {
  if (c - a <= Rational(0)) throw ConvergenceDomainError("requires c - a > 0, got " + (c - a).str());
  if (c.is_nonpositive_integer()) throw PoleError("c = " + c.str() + " is a non-positive integer");
  return psi_difference(a, c, ctx);
}

namespace {

SumValue add_rational(SumValue value, const Rational& extra, const PrecisionContext& ctx) {
  if (value.exact) return SumValue::from_exact(*value.exact + extra, ctx);
  value.numeric.estimate += extra;
  return value;
}

void require_entry9_domain(const Rational& a, const Rational& c, unsigned m) {
  if (c - a <= Rational(m)) {
    throw ConvergenceDomainError("requires c - a > m, got c - a = " + (c - a).str() + ", m = " + std::to_string(m));
  }
  if (c.is_nonpositive_integer()) throw PoleError("c = " + c.str() + " is a non-positive integer");
}

}  // namespace

SumValue entry9_extended(const Rational& a, const Rational& c, const KMFamily& family, const PrecisionContext& ctx,
                         CoefficientRoute route) {
  const unsigned m = family.total();
  require_entry9_domain(a, c, m);
  const auto coeffs = km_coeffs(family, route);
  const Rational base = 1 + a - c;
  Rational finite;
  for (unsigned k = 1; k <= m; ++k) {
    const Rational bottom = pochhammer(base, k);
    if (bottom.is_zero()) throw PoleError("(1+a-c)_k vanishes at k = " + std::to_string(k));
    // Gamma(k) = (k-1)!
    finite += sign_of_power(k) * pochhammer(a, k) * Rational(factorial(k - 1)) * coeffs[k] / bottom;
  }
  return add_rational(psi_difference(a, c, ctx), finite, ctx);
}

SumValue entry9_r1(const Rational& a, const Rational& c, const Rational& d, unsigned m, const PrecisionContext& ctx) {
  if (d.is_nonpositive_integer()) throw DomainError("d = " + d.str() + " is a non-positive integer");
  require_entry9_domain(a, c, m);
  const Rational base = 1 + a - c;
  Rational finite;
  for (unsigned k = 1; k <= m; ++k) {
    const Rational bottom = Rational(k) * Rational(factorial(m - k)) * pochhammer(base, k) * pochhammer(d, k);
    if (bottom.is_zero()) throw PoleError("(1+a-c)_k vanishes at k = " + std::to_string(k));
    finite += sign_of_power(k) * pochhammer(a, k) / bottom;
  }
  finite *= Rational(factorial(m));
  return add_rational(psi_difference(a, c, ctx), finite, ctx);
}

}  // namespace hypersum
