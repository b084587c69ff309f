#include "hypersum/special.hpp"

#include <algorithm>
#include <cmath>

#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"

namespace hypersum {

PrecisionContext::PrecisionContext(int digits, int guard) : digits(digits), guard(guard) {
  if (digits < 20) throw DomainError("precision must be at least 20 digits");
  if (guard < 0) throw DomainError("guard digits must be non-negative");
}

namespace {

// Shift count that lifts x to at least the asymptotic threshold.
long lift_count(const Real& x, const PrecisionContext& ctx) {
  const double threshold = std::max(20.0, ctx.digits / 2.0);
  const double xv = x.to_double();
  return xv >= threshold ? 0 : static_cast<long>(std::ceil(threshold - xv));
}

Real epsilon(const PrecisionContext& ctx) { return Real::pow10(-(ctx.digits + ctx.guard), ctx.working_bits()); }

}  // namespace

Real digamma(const Real& x, const PrecisionContext& ctx) {
  if (x.sign() <= 0) throw DomainError("digamma requires x > 0");
  const mpfr_prec_t bits = ctx.working_bits();
  Real y(x);
  mpfr_prec_round(y.get(), std::max(bits, x.precision()), MPFR_RNDN);

  // psi(x) = psi(x + n) - sum_{j<n} 1/(x + j)
  Real shift(bits);
  const long n = lift_count(y, ctx);
  for (long j = 0; j < n; ++j) {
    shift += Real(1, bits) / y;
    y += Real(1, bits);
  }

  const Real eps = epsilon(ctx);
  const Real inv_sq = Real(1, bits) / (y * y);
  Real result = log(y) - Real(1, bits) / (y * Real(2, bits));
  Real power = inv_sq;
  Real previous_magnitude(bits);
  for (unsigned k = 1;; ++k) {
    Real term = power;
    term *= bernoulli(2 * k) / Rational(2 * k);
    const Real magnitude = abs(term);
    if (magnitude < eps) break;
    if (k > 1 && magnitude > previous_magnitude) {
      throw DomainError("digamma asymptotic series diverged before reaching precision");
    }
    result -= term;
    previous_magnitude = magnitude;
    power *= inv_sq;
  }
  return result - shift;
}

Real digamma(const Rational& x, const PrecisionContext& ctx) {
  return digamma(Real(x, ctx.working_bits()), ctx);
}

Real log_gamma(const Real& x, const PrecisionContext& ctx) {
  if (x.sign() <= 0) throw DomainError("log_gamma requires x > 0");
  const mpfr_prec_t bits = ctx.working_bits();
  Real y(x);
  mpfr_prec_round(y.get(), std::max(bits, x.precision()), MPFR_RNDN);

  // ln Gamma(x) = ln Gamma(x + n) - ln((x)_n)
  Real product(1, bits);
  const long n = lift_count(y, ctx);
  for (long j = 0; j < n; ++j) {
    product *= y;
    y += Real(1, bits);
  }

  const Real eps = epsilon(ctx);
  const Real half(Rational(1, 2), bits);
  Real result = (y - half) * log(y) - y + half * log(Real::pi(bits) * Real(2, bits));
  const Real inv_sq = Real(1, bits) / (y * y);
  Real power = Real(1, bits) / y;
  Real previous_magnitude(bits);
  for (unsigned k = 1;; ++k) {
    Real term = power;
    term *= bernoulli(2 * k) / Rational((2 * k) * (2 * k - 1));
    const Real magnitude = abs(term);
    if (magnitude < eps) break;
    if (k > 1 && magnitude > previous_magnitude) {
      throw DomainError("log_gamma asymptotic series diverged before reaching precision");
    }
    result += term;
    previous_magnitude = magnitude;
    power *= inv_sq;
  }
  if (n > 0) result -= log(product);
  return result;
}

Real log_gamma(const Rational& x, const PrecisionContext& ctx) {
  return log_gamma(Real(x, ctx.working_bits()), ctx);
}

Rational psi_diff_exact(unsigned a, const Rational& c) {
  Rational sum;
  for (unsigned j = 1; j <= a; ++j) {
    const Rational denom = c - Rational(j);
    if (denom.is_zero()) throw PoleError("psi(c) - psi(c - a) hits a pole at c = " + c.str());
    sum += Rational(1) / denom;
  }
  return sum;
}

}  // namespace hypersum
