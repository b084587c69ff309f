#include "hypersum/hyper.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"

namespace hypersum {

std::optional<unsigned> HyperSpec::termination_index() const {
  std::optional<unsigned> n;
  for (const auto& a : upper) {
    if (!a.is_nonpositive_integer()) continue;
    const auto idx = static_cast<unsigned>(-a.to_long());
    if (!n || idx < *n) n = idx;
  }
  return n;
}

void HyperSpec::check_poles(std::size_t last_index) const {
  if (const auto n = termination_index()) last_index = std::min<std::size_t>(last_index, *n);
  for (const auto& b : lower) {
    if (!b.is_nonpositive_integer()) continue;
    // (-j)_k vanishes from k = j + 1 on.
    const auto j = static_cast<std::size_t>(-b.to_long());
    if (j + 1 <= last_index) {
      throw PoleError("lower parameter " + b.str() + " produces a zero denominator at term " +
                      std::to_string(j + 1));
    }
  }
}

Rational HyperSpec::term_ratio(unsigned k) const {
  const Rational kk(k);
  Rational num = 1, den = kk + 1;
  for (const auto& a : upper) num *= kk + a;
  for (const auto& b : lower) den *= kk + b;
  return num / den;
}

Rational eval_terminating(const HyperSpec& spec, const Rational& z) {
  const auto n = spec.termination_index();
  if (!n) throw NotTerminatingError("no upper parameter is a non-positive integer");
  spec.check_poles(*n);
  Rational term = 1, sum = 1;
  for (unsigned k = 0; k < *n; ++k) {
    term *= spec.term_ratio(k) * z;
    sum += term;
  }
  return sum;
}

TruncatedSeries eval_series(const HyperSpec& spec, const Rational& scale, std::size_t order) {
  spec.check_poles(order);
  const auto n = spec.termination_index();
  const std::size_t last = n ? std::min<std::size_t>(order, *n) : order;
  TruncatedSeries s(order);
  Rational term = 1;
  s[0] = term;
  for (std::size_t k = 0; k < last; ++k) {
    term *= spec.term_ratio(static_cast<unsigned>(k)) * scale;
    s[k + 1] = term;
  }
  return s;
}

namespace {

using Poly = std::vector<Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

Poly poly_scale(Poly a, const Rational& c) {
  for (auto& v : a) v *= c;
  return a;
}

Poly one_plus_u_pow(std::size_t n) {
  Poly p(n + 1);
  for (std::size_t i = 0; i <= n; ++i) p[i] = Rational(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i)));
  return p;
}

// Tail of a convergent unit-argument p F_{p-1} series.
//
// With u = 1/k the term ratio is t_{k+1}/t_k = P(k)/Q(k) where, after
// dividing by k^p, P -> pp(u) = prod(1 + a_i u) and Q -> q(u) = (1+u) prod(1 + b_j u).
// We look for g(k) = k G(u), G(u) = sum_j g_j u^j, with
//   g(k) - g(k+1) P(k)/Q(k) = 1 + e_k,
// so that telescoping gives sum_{k>=K} t_k (1 + e_k) = g(K) t_K. In u the
// defect is e = R(u) / (u q(u)) with
//   R(u) = G(u) q(u) - (1+u) pp(u) G(u/(1+u)) - u q(u),
// and g_0..g_J are chosen so that R = O(u^{J+2}). Multiplying by (1+u)^J makes
// the numerator a polynomial u^{J+2} N(u), hence for k >= K (u <= 1/K)
//   |e_k| <= K^{-(J+1)} sum |n_i| K^{-i} / prod(1 + min(0, b_j)/K) =: eps.
// The terms past K share one sign, so |sum t_k e_k| <= eps |T| and
//   |T - g(K) t_K| <= eps/(1 - eps) |g(K) t_K|.
class AsymptoticTail {
 public:
  static constexpr std::array<unsigned, 8> kOrders{2, 4, 8, 12, 16, 24, 32, 40};

  explicit AsymptoticTail(const HyperSpec& spec) {
    const unsigned max_order = kOrders.back();
    const std::size_t M = max_order + 2;

    Poly pp{Rational(1)};
    for (const auto& a : spec.upper) pp = poly_mul(pp, Poly{Rational(1), a});
    Poly q{Rational(1), Rational(1)};
    for (const auto& b : spec.lower) {
      q = poly_mul(q, Poly{Rational(1), b});
      lower_.push_back(b);
    }
    pp_ = pp;
    q_ = q;

    const TruncatedSeries pp_s = to_series(pp, M);
    const TruncatedSeries q_s = to_series(q, M);
    const TruncatedSeries one_plus_u = to_series(Poly{Rational(1), Rational(1)}, M);
    // w = u/(1+u)
    TruncatedSeries w(M);
    for (std::size_t i = 1; i <= M; ++i) w[i] = (i % 2 == 1) ? Rational(1) : Rational(-1);

    TruncatedSeries residual = -(q_s.shifted(1));
    TruncatedSeries w_pow = TruncatedSeries::constant(1, M);
    const TruncatedSeries lead = one_plus_u * pp_s;
    for (unsigned j = 0; j <= max_order; ++j) {
      const TruncatedSeries basis = q_s.shifted(j) - lead * w_pow;
      const Rational& lambda = basis[j + 1];
      if (lambda.is_zero()) throw std::logic_error("asymptotic tail: degenerate recurrence");
      const Rational g = -residual[j + 1] / lambda;
      residual += basis * g;
      g_.push_back(g);
      w_pow *= w;
    }

    for (unsigned J : kOrders) residuals_.push_back(defect_numerator(J));
  }

  struct Estimate {
    Rational g_at_cut;  // g_J(K)
    Rational epsilon;
  };

  // Requires K beyond every parameter so the terms keep one sign.
  std::optional<Estimate> at(std::size_t order_index, const Integer& cut) const {
    const unsigned J = kOrders[order_index];
    const Rational K(cut);
    const Rational inv_K = Rational(1) / K;

    Rational denom_bound = 1;
    for (const auto& b : lower_) {
      if (b.sign() < 0) denom_bound *= Rational(1) + b * inv_K;
    }
    if (denom_bound.sign() <= 0) return std::nullopt;

    Rational numer_bound;
    Rational power = 1;
    for (const auto& c : residuals_[order_index]) {
      numer_bound += abs(c) * power;
      power *= inv_K;
    }
    const Rational eps = numer_bound * pow(inv_K, static_cast<long>(J) + 1) / denom_bound;
    if (eps >= Rational(1, 2)) return std::nullopt;

    Rational g;
    Rational k_power = K;
    for (unsigned j = 0; j <= J; ++j) {
      g += g_[j] * k_power;
      k_power *= inv_K;
    }
    return Estimate{g, eps};
  }

 private:
  static TruncatedSeries to_series(const Poly& p, std::size_t order) {
    TruncatedSeries s(order);
    for (std::size_t i = 0; i < p.size() && i <= order; ++i) s[i] = p[i];
    return s;
  }

  // Coefficients n_i of N(u) where (1+u)^J R(u) = u^{J+2} N(u), R built from g_0..g_J.
  Poly defect_numerator(unsigned J) const {
    Poly G(g_.begin(), g_.begin() + J + 1);
    Poly G_minus_u = G;
    if (G_minus_u.size() < 2) G_minus_u.resize(2);
    G_minus_u[1] -= Rational(1);
    Poly first = poly_mul(poly_mul(one_plus_u_pow(J), G_minus_u), q_);

    Poly inner{Rational(0)};
    for (unsigned j = 0; j <= J; ++j) {
      Poly mono(j + 1);
      mono[j] = g_[j];
      inner = poly_add(inner, poly_mul(mono, one_plus_u_pow(J - j)));
    }
    Poly second = poly_mul(poly_mul(Poly{Rational(1), Rational(1)}, pp_), inner);
    Poly numerator = poly_add(first, poly_scale(second, Rational(-1)));
    for (std::size_t i = 0; i < std::min<std::size_t>(numerator.size(), J + 2); ++i) {
      if (!numerator[i].is_zero()) throw std::logic_error("asymptotic tail: expansion did not cancel");
    }
    if (numerator.size() <= J + 2) return Poly{};
    return Poly(numerator.begin() + J + 2, numerator.end());
  }

  std::vector<Rational> g_;
  std::vector<Poly> residuals_;
  std::vector<Rational> lower_;
  Poly pp_, q_;
};

Rational max_abs_parameter(const HyperSpec& spec) {
  Rational m;
  for (const auto& a : spec.upper) m = std::max(m, abs(a));
  for (const auto& b : spec.lower) m = std::max(m, abs(b));
  return m;
}

// Rigorous sup over k >= K of |z| * |prod(k+a)| / |prod(k+b) (k+1)|,
// valid when p <= q + 1 and K + b > 0 for every lower parameter.
Rational ratio_bound(const HyperSpec& spec, const Rational& z, unsigned K) {
  std::vector<Rational> lower = spec.lower;
  lower.push_back(1);
  const Rational k(K);
  Rational bound = abs(z);
  std::size_t i = 0;
  for (; i < spec.upper.size(); ++i) {
    const Rational num = k + abs(spec.upper[i]);
    const Rational den = k + lower[i];
    bound *= std::max(Rational(1), num / den);
  }
  for (; i < lower.size(); ++i) bound *= Rational(1) / (k + lower[i]);
  return bound;
}

// Running partial sum carried at working precision.
struct PartialSum {
  explicit PartialSum(mpfr_prec_t bits) : term(1, bits), sum(bits), abs_sum(bits) {}

  void advance(const HyperSpec& spec, const Rational& z) {
    sum += term;
    abs_sum += abs(term);
    term *= spec.term_ratio(static_cast<unsigned>(index)) * z;
    ++index;
  }

  Real term;     // t_index
  Real sum;      // t_0 + ... + t_{index-1}
  Real abs_sum;  // |t_0| + ... + |t_{index-1}|
  std::size_t index = 0;
};

// Error allowance for the rounding accumulated by `terms` ratio updates and
// additions at `bits` precision.
Real rounding_allowance(const Real& magnitude, std::size_t terms, mpfr_prec_t bits) {
  Real ulp(1, bits);
  mpfr_mul_2si(ulp.get(), ulp.get(), 1 - static_cast<long>(bits), MPFR_RNDU);
  return ulp * magnitude * Real(static_cast<long>(6 * terms + 10), bits);
}

}  // namespace

namespace {

// Outcome of one summation attempt at a fixed working precision. When the
// truncation error is small enough but rounding is not, extra_bits says how much
// more precision a retry needs.
struct Attempt {
  std::optional<NumericValue> value;
  mpfr_prec_t extra_bits = 0;
  std::size_t terms = 0;
};

// Bits by which |t_0| + |t_1| + ... exceeds 1, plus a small margin.
mpfr_prec_t magnitude_bits(const Real& abs_sum) {
  if (mpfr_zero_p(abs_sum.get())) return 0;
  const long e = mpfr_get_exp(abs_sum.get());
  return e > 0 ? static_cast<mpfr_prec_t>(e + 16) : 0;
}

Attempt sum_unit_balanced(const HyperSpec& spec, const Rational& z, const NumericOptions& options,
                          const Real& tolerance, std::size_t warmup, mpfr_prec_t bits) {
  const AsymptoticTail tail(spec);
  PartialSum acc(bits);
  std::size_t cut = warmup;
  while (true) {
    const std::size_t target = std::min(cut, options.max_terms);
    while (acc.index < target) acc.advance(spec, z);

    std::optional<NumericValue> best;
    bool truncation_ok = false;
    for (std::size_t i = 0; i < AsymptoticTail::kOrders.size(); ++i) {
      const auto est = tail.at(i, Integer(static_cast<unsigned long>(acc.index)));
      if (!est) continue;
      Real tail_value = acc.term;
      tail_value *= est->g_at_cut;
      Real truncation = abs(tail_value);
      truncation *= est->epsilon / (Rational(1) - est->epsilon);
      truncation_ok |= truncation <= tolerance;
      Real bound = truncation + rounding_allowance(acc.abs_sum + abs(tail_value), acc.index + i, bits);
      if (!best || bound < best->tail_bound) {
        best = NumericValue{acc.sum + tail_value, bound, acc.index, options.digits};
      }
    }
    if (best && best->tail_bound <= tolerance) return Attempt{best, 0, acc.index};
    if (truncation_ok) return Attempt{std::nullopt, magnitude_bits(acc.abs_sum), acc.index};
    if (target >= options.max_terms) return Attempt{std::nullopt, 0, acc.index};
    cut *= 2;
  }
}

Attempt sum_geometric(const HyperSpec& spec, const Rational& z, const NumericOptions& options,
                      const Real& tolerance, std::size_t warmup, mpfr_prec_t bits) {
  PartialSum acc(bits);
  while (acc.index < options.max_terms) {
    if (acc.index >= warmup && abs(acc.term) <= tolerance) {
      const Rational rho = ratio_bound(spec, z, static_cast<unsigned>(acc.index));
      if (rho < Rational(1)) {
        Real truncation = abs(acc.term);
        truncation *= Rational(1) / (Rational(1) - rho);
        Real bound = truncation + rounding_allowance(acc.abs_sum, acc.index, bits);
        if (bound <= tolerance) return Attempt{NumericValue{acc.sum, bound, acc.index, options.digits}, 0, acc.index};
        if (truncation <= tolerance) return Attempt{std::nullopt, magnitude_bits(acc.abs_sum), acc.index};
      }
    }
    acc.advance(spec, z);
  }
  return Attempt{std::nullopt, 0, acc.index};
}

}  // namespace

NumericValue eval_numeric(const HyperSpec& spec, const Rational& z, const NumericOptions& options) {
  if (options.digits < 1) throw DomainError("digits must be positive");
  mpfr_prec_t bits = digits_to_bits(options.digits + 10);
  const Real tolerance = options.tolerance ? Real(*options.tolerance, bits)
                                           : Real::pow10(-options.digits, bits);

  if (z.is_zero()) return NumericValue{Real(1, bits), Real(bits), 1, options.digits};

  if (const auto n = spec.termination_index()) {
    spec.check_poles(*n);
    PartialSum acc(bits);
    while (acc.index <= *n) acc.advance(spec, z);
    Real bound = rounding_allowance(acc.abs_sum, acc.index, bits);
    return NumericValue{acc.sum, bound, acc.index, options.digits};
  }

  spec.check_poles(static_cast<std::size_t>(-1));
  const std::size_t p = spec.upper.size(), q = spec.lower.size();
  const bool unit_balanced = p == q + 1 && z == Rational(1);
  if (p > q + 1) throw ConvergenceDomainError("p > q + 1: the series diverges for z != 0");
  if (p == q + 1 && !unit_balanced && abs(z) >= Rational(1)) {
    throw ConvergenceDomainError("|z| >= 1 is only supported at z = 1");
  }
  if (unit_balanced) {
    Rational excess;
    for (const auto& b : spec.lower) excess += b;
    for (const auto& a : spec.upper) excess -= a;
    if (excess.sign() <= 0) {
      throw ConvergenceDomainError("unit argument requires sum(lower) - sum(upper) > 0, got " + excess.str());
    }
  }

  const Integer warmup_int = 2 * ceil(max_abs_parameter(spec)) + 20;
  const std::size_t warmup = warmup_int.get_ui();

  // Cancellation among large terms can leave rounding as the dominant error;
  // retry with enough extra precision to cover the magnitude of the terms.
  for (int retry = 0;; ++retry) {
    const Attempt attempt = unit_balanced ? sum_unit_balanced(spec, z, options, tolerance, warmup, bits)
                                          : sum_geometric(spec, z, options, tolerance, warmup, bits);
    if (attempt.value) return *attempt.value;
    if (attempt.extra_bits == 0 || retry == 3) {
      throw BudgetExceededError("tail bound above tolerance after " + std::to_string(attempt.terms) + " terms");
    }
    bits += attempt.extra_bits;
  }
}

}  // namespace hypersum
