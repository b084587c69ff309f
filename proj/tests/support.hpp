#pragma once

#include <cstdint>
#include <random>

#include <mpfr.h>

#include "hypersum/rational.hpp"
#include "hypersum/real.hpp"

namespace hypersum::testing {

/// Fixed seeds keep every property test reproducible.
inline std::mt19937_64 make_rng(std::uint64_t salt) { return std::mt19937_64(0x5eed0000ULL + salt); }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

/// p/q with |p| <= max_num and 1 <= q <= max_den.
inline Rational random_rational(std::mt19937_64& rng, long max_num = 20, long max_den = 9) {
  return Rational(Integer(uniform(rng, -max_num, max_num)), Integer(uniform(rng, 1, max_den)));
}

/// Strictly positive p/q.
inline Rational random_positive(std::mt19937_64& rng, long max_num = 20, long max_den = 9) {
  return Rational(Integer(uniform(rng, 1, max_num)), Integer(uniform(rng, 1, max_den)));
}

// Reference values straight from MPFR's own special functions.

inline Real mpfr_reference(int (*fn)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t), const Rational& x, mpfr_prec_t bits) {
  Real in(x, bits);
  Real out(bits);
  fn(out.get(), in.get(), MPFR_RNDN);
  return out;
}

inline Real reference_digamma(const Rational& x, mpfr_prec_t bits) { return mpfr_reference(mpfr_digamma, x, bits); }

inline Real reference_lngamma(const Rational& x, mpfr_prec_t bits) { return mpfr_reference(mpfr_lngamma, x, bits); }

inline Real reference_log(const Rational& x, mpfr_prec_t bits) { return mpfr_reference(mpfr_log, x, bits); }

/// |a - b| <= tol
inline bool close(const Real& a, const Real& b, const Real& tol) { return abs(a - b) <= tol; }

inline Real ten_to(long exponent, mpfr_prec_t bits = 512) { return Real::pow10(exponent, bits); }

}  // namespace hypersum::testing
