#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hypersum/rational.hpp"
#include "hypersum/real.hpp"
#include "hypersum/series.hpp"

namespace hypersum {

/// Parameter rows of a generalized hypergeometric series pFq. Term k is
/// prod (upper)_k / prod (lower)_k * z^k / k!.
struct HyperSpec {
  std::vector<Rational> upper;
  std::vector<Rational> lower;

  /// Smallest n such that some upper parameter equals -n, if any.
  std::optional<unsigned> termination_index() const;
  /// Throws PoleError when a lower parameter -j has (-j)_k = 0 for some
  /// k <= last_index (taking termination into account).
  void check_poles(std::size_t last_index) const;
  /// Ratio t_{k+1}/t_k without the argument: prod(k+a)/(prod(k+b)(k+1)).
  Rational term_ratio(unsigned k) const;
};

struct NumericValue {
  Real estimate;
  /// Upper bound on |true value - estimate|, truncation plus rounding.
  Real tail_bound;
  /// Number of explicitly summed terms.
  std::size_t terms_used = 0;
  int digits = 50;
};

struct NumericOptions {
  int digits = 50;
  std::size_t max_terms = 200000;
  /// Target for tail_bound; 10^-digits when unset.
  std::optional<Rational> tolerance;
};

/// Exact sum of a terminating series.
Rational eval_terminating(const HyperSpec& spec, const Rational& z);

/// Numeric value with a certified error bound. Terminating series are summed
/// to their last term. Otherwise:
///  - entire series (p <= q) and |z| < 1 use a geometric tail bound derived
///    from a rigorous bound on the term ratio past the cut;
///  - unit argument with p = q + 1 uses an asymptotic tail G(K) t_K whose
///    residual is bounded exactly (see hyper.cpp).
NumericValue eval_numeric(const HyperSpec& spec, const Rational& z, const NumericOptions& options = {});

/// The series as a polynomial in x: coefficient k is
/// prod (upper)_k / prod (lower)_k * scale^k / k!.
TruncatedSeries eval_series(const HyperSpec& spec, const Rational& scale,
                            std::size_t order = TruncatedSeries::kDefaultOrder);

}  // namespace hypersum
