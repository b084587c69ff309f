#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypersum/rational.hpp"
#include "hypersum/series.hpp"

namespace hypersum {

enum class PhiKind { exp, cosh, power_law, gaussian };

/// Derivatives of one of the library functions phi(t) at t = 0 and t = 1, as
/// series in the free variable x:
///   exp        phi(t) = e^{xt}
///   cosh       phi(t) = cosh(xt)
///   gaussian   phi(t) = e^{-x^2 t^2 / 4}, with
///              phi^{(k)}(t) = (-1)^k (x/2)^k e^{-x^2 t^2/4} H_k(xt/2)
///   power_law  phi(t) = (1 + (1 - t) x)^{-b}, i.e. (X - t)^{-b} rescaled by
///              (X - 1)^b with x = 1/(X - 1), so every coefficient is rational.
/// In each case phi^{(k)}(0) and phi^{(k)}(1) are O(x^k), which makes every
/// derivative sum finite modulo x^{order+1}.
class DerivativeSequence {
 public:
  static DerivativeSequence exp() { return DerivativeSequence(PhiKind::exp); }
  static DerivativeSequence cosh() { return DerivativeSequence(PhiKind::cosh); }
  static DerivativeSequence gaussian() { return DerivativeSequence(PhiKind::gaussian); }
  static DerivativeSequence power_law(const Rational& b) { return DerivativeSequence(PhiKind::power_law, b); }
  /// "exp", "cosh", "gaussian", "power_law" (b = 1) or "power_law:<b>".
  static DerivativeSequence parse(std::string_view text);
  /// One instance of each kind (power_law with b = 2).
  static std::vector<DerivativeSequence> library();

  PhiKind kind() const { return kind_; }
  const Rational& exponent() const { return exponent_; }
  std::string name() const;

  TruncatedSeries at_zero(unsigned k, std::size_t order) const;
  TruncatedSeries at_one(unsigned k, std::size_t order) const;

 private:
  explicit DerivativeSequence(PhiKind kind, Rational exponent = 0) : kind_(kind), exponent_(std::move(exponent)) {}

  PhiKind kind_;
  Rational exponent_;
};

/// phi^{(k)}(0) rebuilt from the Taylor data at t = 1:
/// sum_{n=k}^{order} (-1)^n (-n)_k phi^{(n)}(1) / n!.
TruncatedSeries reexpand_at_zero(const DerivativeSequence& phi, unsigned k, std::size_t order);

using ParamList = std::vector<std::pair<std::string, Rational>>;

/// Both sides of a formal identity, truncated at the same order. Equality is
/// exact coefficient equality.
struct TransformCheck {
  std::string id;
  ParamList params;
  std::string phi;  // empty for identities that do not take a phi
  std::size_t order = TruncatedSeries::kDefaultOrder;
  TruncatedSeries lhs;
  TruncatedSeries rhs;
  /// Derived quantities worth reporting (f, prefactors, ...).
  std::vector<std::pair<std::string, std::string>> details;
  /// For theorem2: the odd-derivative block of the right side, prefactor included.
  std::optional<TruncatedSeries> odd_block;

  bool passed() const { return lhs == rhs; }
  std::optional<std::size_t> mismatch() const { return first_mismatch(lhs, rhs); }
};

/// sum 2^k (a)_k phi^(k)(0) / ((2a)_k k!)  vs  sum phi^(2k)(1) / (4^k (a+1/2)_k k!)
TransformCheck entry8_check(const Rational& a, const DerivativeSequence& phi,
                            std::size_t order = TruncatedSeries::kDefaultOrder);

/// sum (a)_k phi^(k)(0) / ((b)_k k!)  vs  sum (-1)^k (b-a)_k phi^(k)(1) / ((b)_k k!)
TransformCheck entry20_check(const Rational& a, const Rational& b, const DerivativeSequence& phi,
                             std::size_t order = TruncatedSeries::kDefaultOrder);

/// Extra pair (d+1, d) on the left; the right side uses f = d(b-a-1)/(d-a).
TransformCheck theorem1_check(const Rational& a, const Rational& b, const Rational& d, const DerivativeSequence& phi,
                              std::size_t order = TruncatedSeries::kDefaultOrder);

/// Left weights 2^k (a)_k (d+1)_k / ((2a+1)_k (d)_k k!); the right side splits
/// into even and odd derivative blocks, the odd one scaled by -(1-2a/d)/(2a+1).
TransformCheck theorem2_check(const Rational& a, const Rational& d, const DerivativeSequence& phi,
                              std::size_t order = TruncatedSeries::kDefaultOrder);

enum class GeneratingId {
  eq31,
  eq32,
  eq33,
  eq34,
  hermite_2f2_even,
  hermite_2f2_odd,
  contiguous_2f2,
  closing_3f3,
};

/// Stable ids: "eq31", ..., "hermite-2f2-even", "contiguous-2f2", "closing-3f3".
std::string_view generating_name(GeneratingId id);
std::optional<GeneratingId> parse_generating(std::string_view name);
/// Parameter names the identity reads, in order.
std::vector<std::string> generating_params(GeneratingId id);

/// Builds both sides of the named identity as series in x (in z for eq33 and
/// contiguous-2f2). `params` must hold every name from generating_params.
TransformCheck generating_identity(GeneratingId id, const std::map<std::string, Rational>& params,
                                 std::size_t order = TruncatedSeries::kDefaultOrder);

/// 3F3(a/2, a/2+1/2, d+1; a+1/2, a+1, d; -x^2) against the sum of the two 2F2
/// series it reduces to once the Hermite sums are rewritten.
TransformCheck reduced_3f3_check(const Rational& a, const Rational& d,
                                 std::size_t order = TruncatedSeries::kDefaultOrder);

/// 0F1(-; a+1/2; x^2/4) next to Gamma(a+1/2) (x/2)^{1/2-a} I_{a-1/2}(x) expanded
/// from the Bessel series.
TransformCheck bessel_form(const Rational& a, std::size_t order = TruncatedSeries::kDefaultOrder);

}  // namespace hypersum
