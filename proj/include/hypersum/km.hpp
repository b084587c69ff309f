#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hypersum/rational.hpp"

namespace hypersum {

/// One numerator/denominator pair (d + m, d) with positive integer gap m.
struct KMPair {
  Rational d;
  unsigned m = 1;

  friend bool operator==(const KMPair&, const KMPair&) = default;
};

/// Ordered list of (d_i, m_i). Pairs with m_i = 0 contribute nothing and are
/// dropped on construction; the empty family has m = 0 and Lambda = 1.
class KMFamily {
 public:
  KMFamily() = default;
  explicit KMFamily(std::vector<KMPair> pairs);

  /// Comma-separated "d:m" entries, e.g. "2:1,5/2:3". Empty text is the empty family.
  static KMFamily parse(std::string_view text);
  std::string str() const;

  const std::vector<KMPair>& pairs() const { return pairs_; }
  bool empty() const { return pairs_.empty(); }
  /// m_1 + ... + m_r
  unsigned total() const;
  /// (d_1)_{m_1} ... (d_r)_{m_r}
  Rational lambda() const;

 private:
  std::vector<KMPair> pairs_;
};

struct KMCoefficientTable {
  unsigned m = 0;
  Rational lambda;
  std::vector<Rational> sigma;   // sigma_0 .. sigma_m
  std::vector<Rational> coeffs;  // C_{0,r} .. C_{m,r}

  friend bool operator==(const KMCoefficientTable&, const KMCoefficientTable&) = default;
};

/// Coefficients of prod (d_i + x)_{m_i} = sum sigma_j x^j.
std::vector<Rational> sigma_coefficients(const KMFamily& family);

/// C_k = (1/Lambda) sum_{j=k}^{m} sigma_j S(j, k).
KMCoefficientTable km_coefficients_stirling(const KMFamily& family);

/// C_k = (-1)^k / k! * F(-k, (d + m); (d); 1), each a terminating series.
KMCoefficientTable km_coefficients_hyper(const KMFamily& family);

/// Single pair closed form C_k = binomial(m, k) / (d)_k.
KMCoefficientTable km_coefficients_vandermonde(const Rational& d, unsigned m);

}  // namespace hypersum
