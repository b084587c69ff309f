#include "hypersum/real.hpp"

#include <algorithm>
#include <cmath>

namespace hypersum {

mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(std::max(digits, 1) * 3.3219280948873623)) + 4;
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(long value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_q(value_, value.raw().get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

Real Real::euler(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_euler(r.value_, MPFR_RNDN);
  return r;
}

Real Real::pow10(long exponent, mpfr_prec_t bits) {
  Real r(bits);
  mpfr_ui_pow_ui(r.value_, 10, static_cast<unsigned long>(std::labs(exponent)), MPFR_RNDN);
  if (exponent < 0) mpfr_ui_div(r.value_, 1, r.value_, MPFR_RNDN);
  return r;
}

namespace {

std::string format_scientific(mpfr_srcptr value, int digits, const char* pattern) {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, pattern, std::max(digits, 1) - 1, value);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

}  // namespace

std::string Real::str(int digits) const { return format_scientific(value_, digits, "%.*Re"); }

std::string Real::str() const {
  return str(static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(value_))));
}

std::string Real::str_up(int digits) const { return format_scientific(value_, digits, "%.*RUe"); }

namespace {

// Grows `target` in place so a binary operation keeps the wider precision.
void widen(mpfr_ptr target, mpfr_srcptr other) {
  if (mpfr_get_prec(other) > mpfr_get_prec(target)) mpfr_prec_round(target, mpfr_get_prec(other), MPFR_RNDN);
}

}  // namespace

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

Real& Real::operator+=(const Real& o) {
  widen(value_, o.value_);
  mpfr_add(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  widen(value_, o.value_);
  mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  widen(value_, o.value_);
  mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  widen(value_, o.value_);
  mpfr_div(value_, value_, o.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(const Rational& o) {
  mpfr_add_q(value_, value_, o.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Rational& o) {
  mpfr_mul_q(value_, value_, o.raw().get_mpq_t(), MPFR_RNDN);
  return *this;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real abs(const Real& x) {
  Real r(x);
  mpfr_abs(r.get(), r.get(), MPFR_RNDN);
  return r;
}

Real log(const Real& x) {
  Real r(x.precision());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real exp(const Real& x) {
  Real r(x.precision());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& x) {
  Real r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace hypersum
