#include "hypersum/series.hpp"

#include <algorithm>

#include "hypersum/error.hpp"

namespace hypersum {

TruncatedSeries::TruncatedSeries(std::size_t order) : coeffs_(order + 1) {}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.emplace_back();
}

TruncatedSeries TruncatedSeries::constant(const Rational& c, std::size_t order) {
  TruncatedSeries s(order);
  s.coeffs_[0] = c;
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, std::size_t power, std::size_t order) {
  TruncatedSeries s(order);
  if (power <= order) s.coeffs_[power] = c;
  return s;
}

TruncatedSeries TruncatedSeries::exponential(const Rational& scale, std::size_t order) {
  TruncatedSeries s(order);
  Rational term = 1;
  for (std::size_t k = 0; k <= order; ++k) {
    s.coeffs_[k] = term;
    term *= scale / Rational(static_cast<unsigned long>(k + 1));
  }
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) {
  coeffs_.resize(std::min(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& o) {
  const std::size_t n = std::min(coeffs_.size(), o.coeffs_.size());
  std::vector<Rational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (!o.coeffs_[j].is_zero()) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  coeffs_ = std::move(out);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  for (auto& v : coeffs_) v *= c;
  return *this;
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r(*this);
  for (auto& v : r.coeffs_) v = -v;
  return r;
}

TruncatedSeries TruncatedSeries::shifted(std::size_t power) const {
  TruncatedSeries r(order());
  for (std::size_t i = 0; i + power <= order(); ++i) r.coeffs_[i + power] = coeffs_[i];
  return r;
}

TruncatedSeries TruncatedSeries::substitute(const Rational& c, std::size_t power) const {
  if (power == 0) throw DomainError("substitution power must be positive");
  TruncatedSeries r(order());
  Rational scale = 1;
  for (std::size_t i = 0; i * power <= order(); ++i) {
    r.coeffs_[i * power] = coeffs_[i] * scale;
    scale *= c;
  }
  return r;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
  if (!inner[0].is_zero()) throw DomainError("compose: inner series must vanish at 0");
  const std::size_t n = std::min(order(), inner.order());
  TruncatedSeries result = TruncatedSeries::constant(coeffs_[0], n);
  TruncatedSeries power = inner.with_order(n);
  for (std::size_t i = 1; i <= n; ++i) {
    if (!coeffs_[i].is_zero()) result += power * coeffs_[i];
    if (i < n) power *= inner;
  }
  return result;
}

TruncatedSeries TruncatedSeries::derivative() const {
  if (order() == 0) return TruncatedSeries(0);
  TruncatedSeries r(order() - 1);
  for (std::size_t i = 1; i <= order(); ++i) r.coeffs_[i - 1] = coeffs_[i] * Rational(static_cast<unsigned long>(i));
  return r;
}

TruncatedSeries TruncatedSeries::with_order(std::size_t order) const {
  TruncatedSeries r(order);
  for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) r.coeffs_[i] = coeffs_[i];
  return r;
}

Rational TruncatedSeries::evaluate(const Rational& x) const {
  Rational acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

std::optional<std::size_t> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b) {
  const std::size_t n = std::min(a.order(), b.order());
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i] != b[i]) return i;
  }
  return std::nullopt;
}

}  // namespace hypersum
