#pragma once

#include "hypersum/rational.hpp"
#include "hypersum/real.hpp"

namespace hypersum {

/// Working precision for numeric special functions, in decimal digits.
/// Computation is carried at digits + guard.
struct PrecisionContext {
  int digits = 50;
  int guard = 10;

  PrecisionContext() = default;
  PrecisionContext(int digits, int guard = 10);

  mpfr_prec_t working_bits() const { return digits_to_bits(digits + guard); }
  mpfr_prec_t output_bits() const { return digits_to_bits(digits); }
};

/// psi(x) = Gamma'(x)/Gamma(x) for x > 0: lift x by the recurrence
/// psi(x+1) = psi(x) + 1/x until it clears max(20, digits/2), then sum the
/// Bernoulli asymptotic series until its terms drop below the working epsilon.
Real digamma(const Real& x, const PrecisionContext& ctx = {});
Real digamma(const Rational& x, const PrecisionContext& ctx = {});

/// ln Gamma(x) for x > 0, same lift followed by the Stirling series.
Real log_gamma(const Real& x, const PrecisionContext& ctx = {});
Real log_gamma(const Rational& x, const PrecisionContext& ctx = {});

/// psi(c) - psi(c - a) = sum_{j=1}^{a} 1/(c - j) for a positive integer a.
Rational psi_diff_exact(unsigned a, const Rational& c);

}  // namespace hypersum
