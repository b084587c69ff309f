#include "hypersum/km.hpp"

#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hyper.hpp"

namespace hypersum {

namespace {

void validate_d(const Rational& d) {
  if (d.is_nonpositive_integer()) throw DomainError("family parameter d = " + d.str() + " is a non-positive integer");
}

}  // namespace

KMFamily::KMFamily(std::vector<KMPair> pairs) {
  for (auto& p : pairs) {
    if (p.m == 0) continue;
    validate_d(p.d);
    pairs_.push_back(std::move(p));
  }
}

KMFamily KMFamily::parse(std::string_view text) {
  std::vector<KMPair> pairs;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("family entry '" + std::string(item) + "' is not of the form d:m");
    }
    const Rational m = Rational::parse(item.substr(colon + 1));
    if (!m.is_integer() || m.sign() < 0) throw ParseError("family gap m must be a non-negative integer");
    pairs.push_back({Rational::parse(item.substr(0, colon)), static_cast<unsigned>(m.to_long())});
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return KMFamily(std::move(pairs));
}

std::string KMFamily::str() const {
  std::string out;
  for (const auto& p : pairs_) {
    if (!out.empty()) out += ',';
    out += p.d.str() + ":" + std::to_string(p.m);
  }
  return out;
}

unsigned KMFamily::total() const {
  unsigned m = 0;
  for (const auto& p : pairs_) m += p.m;
  return m;
}

Rational KMFamily::lambda() const {
  Rational l = 1;
  for (const auto& p : pairs_) l *= pochhammer(p.d, p.m);
  return l;
}

std::vector<Rational> sigma_coefficients(const KMFamily& family) {
  std::vector<Rational> poly{Rational(1)};
  for (const auto& p : family.pairs()) {
    for (unsigned i = 0; i < p.m; ++i) {
      // multiply by (x + d + i)
      const Rational c = p.d + Rational(i);
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j] * c;
        next[j + 1] += poly[j];
      }
      poly = std::move(next);
    }
  }
  return poly;
}

KMCoefficientTable km_coefficients_stirling(const KMFamily& family) {
  KMCoefficientTable t;
  t.m = family.total();
  t.lambda = family.lambda();
  t.sigma = sigma_coefficients(family);
  t.coeffs.resize(t.m + 1);
  for (unsigned k = 0; k <= t.m; ++k) {
    Rational acc;
    for (unsigned j = k; j <= t.m; ++j) acc += t.sigma[j] * Rational(stirling2(j, k));
    t.coeffs[k] = acc / t.lambda;
  }
  return t;
}

KMCoefficientTable km_coefficients_hyper(const KMFamily& family) {
  KMCoefficientTable t;
  t.m = family.total();
  t.lambda = family.lambda();
  t.sigma = sigma_coefficients(family);
  t.coeffs.resize(t.m + 1);
  for (unsigned k = 0; k <= t.m; ++k) {
    HyperSpec spec;
    spec.upper.push_back(-Rational(k));
    for (const auto& p : family.pairs()) {
      spec.upper.push_back(p.d + Rational(p.m));
      spec.lower.push_back(p.d);
    }
    const Rational sign = k % 2 == 0 ? Rational(1) : Rational(-1);
    t.coeffs[k] = sign / Rational(factorial(k)) * eval_terminating(spec, 1);
  }
  return t;
}

KMCoefficientTable km_coefficients_vandermonde(const Rational& d, unsigned m) {
  validate_d(d);
  KMCoefficientTable t;
  t.m = m;
  t.lambda = pochhammer(d, m);
  t.sigma = sigma_coefficients(KMFamily({{d, m}}));
  t.coeffs.resize(m + 1);
  for (unsigned k = 0; k <= m; ++k) t.coeffs[k] = Rational(binomial(m, k)) / pochhammer(d, k);
  return t;
}

}  // namespace hypersum
