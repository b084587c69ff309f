#include "hypersum/transform.hpp"

#include <array>
#include <functional>
#include <string>

#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hyper.hpp"

namespace hypersum {

namespace {

// Series for one side of an identity. The identities are analytic in their
// parameters, so a lower parameter reaching zero anywhere in k <= order is a
// pole even when an upper parameter would end the series first: the early
// truncation is a different function of the parameters.
TruncatedSeries identity_series(const HyperSpec& spec, const Rational& scale, std::size_t order) {
  for (const auto& b : spec.lower) {
    if (b.is_nonpositive_integer() && -b < Rational(static_cast<unsigned long>(order))) {
      throw PoleError("lower parameter " + b.str() + " vanishes within the series order " + std::to_string(order));
    }
  }
  return eval_series(spec, scale, order);
}

const Rational kHalf(1, 2);

Rational sign_of_power(unsigned k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

TruncatedSeries cosh_series(std::size_t order) {
  return (TruncatedSeries::exponential(1, order) + TruncatedSeries::exponential(-1, order)) * kHalf;
}

TruncatedSeries sinh_series(std::size_t order) {
  return (TruncatedSeries::exponential(1, order) - TruncatedSeries::exponential(-1, order)) * kHalf;
}

TruncatedSeries x_power(std::size_t k, std::size_t order) { return TruncatedSeries::monomial(1, k, order); }

// (1 + x)^{-c}
TruncatedSeries binomial_series(const Rational& c, std::size_t order) {
  return identity_series(HyperSpec{{c}, {}}, -1, order);
}

// e^{-x^2/4} when the exponent sign is -1, e^{x^2/4} when +1
TruncatedSeries gaussian_factor(int sign, std::size_t order) {
  return TruncatedSeries::exponential(Rational(sign, 4), order).substitute(1, 2);
}

// sum_{k<=order} w_k D_k with w the coefficients of a hypergeometric weight series
TruncatedSeries weighted_sum(const TruncatedSeries& weights, std::size_t order,
                             const std::function<TruncatedSeries(unsigned)>& derivative) {
  TruncatedSeries out(order);
  for (unsigned k = 0; k <= weights.order() && k <= order; ++k) {
    if (weights[k].is_zero()) continue;
    out += derivative(k) * weights[k];
  }
  return out;
}

// sum_k w_k D_{2k + offset} for the even/odd derivative blocks
TruncatedSeries stride_sum(const TruncatedSeries& weights, unsigned offset, std::size_t order,
                           const std::function<TruncatedSeries(unsigned)>& derivative) {
  TruncatedSeries out(order);
  for (unsigned k = 0; 2 * k + offset <= order; ++k) {
    if (weights[k].is_zero()) continue;
    out += derivative(2 * k + offset) * weights[k];
  }
  return out;
}

void reject_nonpositive_integer(const Rational& value, const char* name) {
  if (value.is_nonpositive_integer()) {
    throw DomainError(std::string(name) + " = " + value.str() + " must not be a non-positive integer");
  }
}

void reject_zero(const Rational& value, const std::string& what) {
  if (value.is_zero()) throw DomainError(what + " vanishes");
}

TransformCheck make_check(std::string id, ParamList params, const DerivativeSequence* phi, std::size_t order) {
  TransformCheck c;
  c.id = std::move(id);
  c.params = std::move(params);
  if (phi != nullptr) c.phi = phi->name();
  c.order = order;
  c.lhs = TruncatedSeries(order);
  c.rhs = TruncatedSeries(order);
  return c;
}

// sum_k (x/4)^{2k + s} H_{2k + s}(x/2) / ((base)_k k!) with s in {0, 1}
TruncatedSeries hermite_block(const Rational& base, unsigned s, std::size_t order) {
  const TruncatedSeries weights = identity_series(HyperSpec{{}, {base}}, 1, order);
  const TruncatedSeries half_x = TruncatedSeries::monomial(kHalf, 1, order);
  TruncatedSeries out(order);
  for (unsigned k = 0; 2 * k + s <= order; ++k) {
    const unsigned n = 2 * k + s;
    out += TruncatedSeries::monomial(pow(Rational(1, 4), n), n, order) * hermite(n, half_x) * weights[k];
  }
  return out;
}

// sum_k (x/4)^{2k} H_{2k+1}(x/2) / ((a+3/2)_k k!)
TruncatedSeries hermite_odd_shifted(const Rational& a, std::size_t order) {
  const TruncatedSeries weights = identity_series(HyperSpec{{}, {a + Rational(3, 2)}}, 1, order);
  const TruncatedSeries half_x = TruncatedSeries::monomial(kHalf, 1, order);
  TruncatedSeries out(order);
  for (unsigned k = 0; 2 * k <= order; ++k) {
    out += TruncatedSeries::monomial(pow(Rational(1, 4), 2 * k), 2 * k, order) * hermite(2 * k + 1, half_x) *
           weights[k];
  }
  return out;
}

const Rational& need(const std::map<std::string, Rational>& params, const std::string& key) {
  const auto it = params.find(key);
  if (it == params.end()) throw DomainError("missing parameter " + key);
  return it->second;
}

}  // namespace

DerivativeSequence DerivativeSequence::parse(std::string_view text) {
  if (text == "exp") return exp();
  if (text == "cosh") return cosh();
  if (text == "gaussian") return gaussian();
  if (text == "power_law") return power_law(1);
  constexpr std::string_view prefix = "power_law:";
  if (text.substr(0, prefix.size()) == prefix) return power_law(Rational::parse(text.substr(prefix.size())));
  throw ParseError("unknown phi '" + std::string(text) + "' (expected exp, cosh, gaussian or power_law:<b>)");
}

std::vector<DerivativeSequence> DerivativeSequence::library() {
  return {exp(), cosh(), power_law(2), gaussian()};
}

std::string DerivativeSequence::name() const {
  switch (kind_) {
    case PhiKind::exp: return "exp";
    case PhiKind::cosh: return "cosh";
    case PhiKind::gaussian: return "gaussian";
    case PhiKind::power_law: return "power_law:" + exponent_.str();
  }
  return {};
}

TruncatedSeries DerivativeSequence::at_zero(unsigned k, std::size_t order) const {
  switch (kind_) {
    case PhiKind::exp: return x_power(k, order);
    case PhiKind::cosh: return k % 2 == 0 ? x_power(k, order) : TruncatedSeries(order);
    case PhiKind::gaussian:
      return TruncatedSeries::monomial(sign_of_power(k) * pow(kHalf, static_cast<long>(k)) * hermite(k, Rational(0)),
                                       k, order);
    case PhiKind::power_law:
      return TruncatedSeries::monomial(pochhammer(exponent_, k), k, order) *
             binomial_series(exponent_ + Rational(k), order);
  }
  return TruncatedSeries(order);
}

TruncatedSeries DerivativeSequence::at_one(unsigned k, std::size_t order) const {
  switch (kind_) {
    case PhiKind::exp: return x_power(k, order) * TruncatedSeries::exponential(1, order);
    case PhiKind::cosh: return x_power(k, order) * (k % 2 == 0 ? cosh_series(order) : sinh_series(order));
    case PhiKind::gaussian: {
      const TruncatedSeries half_x = TruncatedSeries::monomial(kHalf, 1, order);
      return TruncatedSeries::monomial(sign_of_power(k) * pow(kHalf, static_cast<long>(k)), k, order) *
             gaussian_factor(-1, order) * hermite(k, half_x);
    }
    case PhiKind::power_law: return TruncatedSeries::monomial(pochhammer(exponent_, k), k, order);
  }
  return TruncatedSeries(order);
}

TruncatedSeries reexpand_at_zero(const DerivativeSequence& phi, unsigned k, std::size_t order) {
  TruncatedSeries out(order);
  Rational weight = 1;  // (-1)^{n-k} / (n-k)!
  for (unsigned n = k; n <= order; ++n) {
    if (n > k) weight *= Rational(-1) / Rational(n - k);
    out += phi.at_one(n, order) * weight;
  }
  return out;
}

TransformCheck entry8_check(const Rational& a, const DerivativeSequence& phi, std::size_t order) {
  auto c = make_check("entry8", {{"a", a}}, &phi, order);
  const auto left = identity_series(HyperSpec{{a}, {2 * a}}, 2, order);
  const auto right = identity_series(HyperSpec{{}, {a + kHalf}}, Rational(1, 4), order);
  c.lhs = weighted_sum(left, order, [&](unsigned k) { return phi.at_zero(k, order); });
  c.rhs = stride_sum(right, 0, order, [&](unsigned n) { return phi.at_one(n, order); });
  return c;
}

TransformCheck entry20_check(const Rational& a, const Rational& b, const DerivativeSequence& phi, std::size_t order) {
  auto c = make_check("entry20", {{"a", a}, {"b", b}}, &phi, order);
  const auto left = identity_series(HyperSpec{{a}, {b}}, 1, order);
  const auto right = identity_series(HyperSpec{{b - a}, {b}}, -1, order);
  c.lhs = weighted_sum(left, order, [&](unsigned k) { return phi.at_zero(k, order); });
  c.rhs = weighted_sum(right, order, [&](unsigned k) { return phi.at_one(k, order); });
  return c;
}

TransformCheck theorem1_check(const Rational& a, const Rational& b, const Rational& d, const DerivativeSequence& phi,
                              std::size_t order) {
  reject_nonpositive_integer(d, "d");
  if (d == a) throw SingularParameterError("d = a makes f = d(b-a-1)/(d-a) undefined");
  const Rational f = d * (b - a - 1) / (d - a);
  reject_nonpositive_integer(f, "f");
  auto c = make_check("theorem1", {{"a", a}, {"b", b}, {"d", d}}, &phi, order);
  c.details.emplace_back("f", f.str());
  const auto left = identity_series(HyperSpec{{a, d + 1}, {b, d}}, 1, order);
  const auto right = identity_series(HyperSpec{{b - a - 1, f + 1}, {b, f}}, -1, order);
  c.lhs = weighted_sum(left, order, [&](unsigned k) { return phi.at_zero(k, order); });
  c.rhs = weighted_sum(right, order, [&](unsigned k) { return phi.at_one(k, order); });
  return c;
}

TransformCheck theorem2_check(const Rational& a, const Rational& d, const DerivativeSequence& phi, std::size_t order) {
  reject_nonpositive_integer(d, "d");
  reject_zero(2 * a + 1, "2a+1");
  auto c = make_check("theorem2", {{"a", a}, {"d", d}}, &phi, order);
  const Rational prefactor = -(1 - 2 * a / d) / (2 * a + 1);
  c.details.emplace_back("odd_prefactor", prefactor.str());
  const auto left = identity_series(HyperSpec{{a, d + 1}, {2 * a + 1, d}}, 2, order);
  const auto even = identity_series(HyperSpec{{}, {a + kHalf}}, Rational(1, 4), order);
  const auto odd = identity_series(HyperSpec{{}, {a + Rational(3, 2)}}, Rational(1, 4), order);
  auto at_one = [&](unsigned n) { return phi.at_one(n, order); };
  c.lhs = weighted_sum(left, order, [&](unsigned k) { return phi.at_zero(k, order); });
  c.odd_block = stride_sum(odd, 1, order, at_one) * prefactor;
  c.rhs = stride_sum(even, 0, order, at_one) + *c.odd_block;
  return c;
}

namespace {

constexpr std::array<std::pair<GeneratingId, std::string_view>, 8> kGeneratingNames{{
    {GeneratingId::eq31, "eq31"},
    {GeneratingId::eq32, "eq32"},
    {GeneratingId::eq33, "eq33"},
    {GeneratingId::eq34, "eq34"},
    {GeneratingId::hermite_2f2_even, "hermite-2f2-even"},
    {GeneratingId::hermite_2f2_odd, "hermite-2f2-odd"},
    {GeneratingId::contiguous_2f2, "contiguous-2f2"},
    {GeneratingId::closing_3f3, "closing-3f3"},
}};

}  // namespace

std::string_view generating_name(GeneratingId id) {
  for (const auto& [key, name] : kGeneratingNames) {
    if (key == id) return name;
  }
  return {};
}

std::optional<GeneratingId> parse_generating(std::string_view name) {
  for (const auto& [key, text] : kGeneratingNames) {
    if (text == name) return key;
  }
  return std::nullopt;
}

std::vector<std::string> generating_params(GeneratingId id) {
  switch (id) {
    case GeneratingId::eq31:
    case GeneratingId::eq32:
    case GeneratingId::eq34: return {"a", "d"};
    case GeneratingId::eq33:
    case GeneratingId::closing_3f3: return {"a", "b", "d"};
    case GeneratingId::hermite_2f2_even:
    case GeneratingId::hermite_2f2_odd: return {"a"};
    case GeneratingId::contiguous_2f2: return {"alpha", "beta", "gamma", "delta"};
  }
  return {};
}

TransformCheck generating_identity(GeneratingId id, const std::map<std::string, Rational>& params, std::size_t order) {
  ParamList list;
  for (const auto& key : generating_params(id)) list.emplace_back(key, need(params, key));
  auto c = make_check(std::string(generating_name(id)), list, nullptr, order);
  const Rational three_halves(3, 2);
  const TruncatedSeries x = x_power(1, order);

  switch (id) {
    case GeneratingId::eq31: {
      const Rational& a = need(params, "a");
      const Rational& d = need(params, "d");
      reject_nonpositive_integer(d, "d");
      reject_zero(2 * a + 1, "2a+1");
      const Rational prefactor = (1 - 2 * a / d) / (2 * a + 1);
      c.details.emplace_back("odd_prefactor", prefactor.str());
      c.lhs = TruncatedSeries::exponential(-1, order) * identity_series(HyperSpec{{a, d + 1}, {2 * a + 1, d}}, 2, order);
      c.rhs = identity_series(HyperSpec{{}, {a + kHalf}}, Rational(1, 4), order).substitute(1, 2) -
              x * identity_series(HyperSpec{{}, {a + three_halves}}, Rational(1, 4), order).substitute(1, 2) * prefactor;
      break;
    }
    case GeneratingId::eq32: {
      const Rational& a = need(params, "a");
      const Rational& d = need(params, "d");
      reject_nonpositive_integer(d, "d");
      reject_zero(2 * a + 1, "2a+1");
      const Rational prefactor = (1 - a / d) / (2 * a + 1);
      c.details.emplace_back("odd_prefactor", prefactor.str());
      c.lhs = identity_series(HyperSpec{{a / 2, a / 2 + kHalf, d + 1}, {kHalf, a + kHalf, a + 1, d}}, 1, order)
                  .substitute(1, 2);
      c.rhs = cosh_series(order) * identity_series(HyperSpec{{}, {a + kHalf}}, Rational(1, 4), order).substitute(1, 2) -
              x * sinh_series(order) *
                  identity_series(HyperSpec{{}, {a + three_halves}}, Rational(1, 4), order).substitute(1, 2) * prefactor;
      break;
    }
    case GeneratingId::eq33: {
      const Rational& a = need(params, "a");
      const Rational& b = need(params, "b");
      const Rational& d = need(params, "d");
      reject_nonpositive_integer(d, "d");
      reject_zero(2 * a + 1, "2a+1");
      const Rational prefactor = (1 - 2 * a / d) * b / (2 * a + 1);
      c.details.emplace_back("odd_prefactor", prefactor.str());
      // 2z/(1+z)
      TruncatedSeries argument(order);
      for (std::size_t i = 1; i <= order; ++i) argument[i] = 2 * sign_of_power(static_cast<unsigned>(i - 1));
      c.lhs = binomial_series(b, order) *
              identity_series(HyperSpec{{a, b, d + 1}, {2 * a + 1, d}}, 1, order).compose(argument);
      c.rhs = identity_series(HyperSpec{{b / 2, b / 2 + kHalf}, {a + kHalf}}, 1, order).substitute(1, 2) -
              x * identity_series(HyperSpec{{b / 2 + kHalf, b / 2 + 1}, {a + three_halves}}, 1, order).substitute(1, 2) *
                  prefactor;
      break;
    }
    case GeneratingId::eq34: {
      const Rational& a = need(params, "a");
      const Rational& d = need(params, "d");
      reject_nonpositive_integer(d, "d");
      reject_zero(a + kHalf, "a+1/2");
      const Rational prefactor = (1 - a / d) / (a + kHalf);
      c.details.emplace_back("odd_prefactor", prefactor.str());
      c.lhs = gaussian_factor(1, order) *
              identity_series(HyperSpec{{a / 2, a / 2 + kHalf, d + 1}, {a + kHalf, a + 1, d}}, -1, order).substitute(1, 2);
      c.rhs = hermite_block(a + kHalf, 0, order) + hermite_block(a + three_halves, 1, order) * prefactor;
      break;
    }
    case GeneratingId::hermite_2f2_even: {
      const Rational& a = need(params, "a");
      c.lhs = hermite_block(a + kHalf, 0, order);
      c.rhs = gaussian_factor(1, order) *
              identity_series(HyperSpec{{a / 2, a / 2 + kHalf}, {a, a + kHalf}}, -1, order).substitute(1, 2);
      break;
    }
    case GeneratingId::hermite_2f2_odd: {
      const Rational& a = need(params, "a");
      c.lhs = hermite_odd_shifted(a, order);
      c.rhs = x * gaussian_factor(1, order) *
              identity_series(HyperSpec{{a / 2 + 1, a / 2 + three_halves}, {a + three_halves, a + 2}}, -1, order)
                  .substitute(1, 2);
      break;
    }
    case GeneratingId::contiguous_2f2: {
      const Rational& alpha = need(params, "alpha");
      const Rational& beta = need(params, "beta");
      const Rational& gamma = need(params, "gamma");
      const Rational& delta = need(params, "delta");
      reject_zero(gamma * delta * (delta + 1), "gamma delta (delta+1)");
      const Rational prefactor = alpha * beta / (gamma * delta * (delta + 1));
      c.details.emplace_back("prefactor", prefactor.str());
      c.lhs = identity_series(HyperSpec{{alpha, beta}, {gamma, delta}}, 1, order) -
              identity_series(HyperSpec{{alpha, beta}, {gamma, delta + 1}}, 1, order);
      c.rhs = x * identity_series(HyperSpec{{alpha + 1, beta + 1}, {gamma + 1, delta + 2}}, 1, order) * prefactor;
      break;
    }
    case GeneratingId::closing_3f3: {
      const Rational& a = need(params, "a");
      const Rational& b = need(params, "b");
      const Rational& d = need(params, "d");
      reject_nonpositive_integer(d, "d");
      if (2 * d == a) throw SingularParameterError("2d = a makes f = 2d(b-a-1)/(2d-a) undefined");
      const Rational f = 2 * d * (b - a - 1) / (2 * d - a);
      reject_nonpositive_integer(f, "f");
      c.details.emplace_back("f", f.str());
      c.lhs = TruncatedSeries::exponential(1, order).substitute(1, 2) *
              identity_series(HyperSpec{{a / 2, a / 2 + kHalf, d + 1}, {b / 2, b / 2 + kHalf, d}}, -1, order)
                  .substitute(1, 2);
      const auto weights = identity_series(HyperSpec{{b - a - 1, f + 1}, {b, f}}, 1, order);
      c.rhs = weighted_sum(weights, order, [&](unsigned k) { return x_power(k, order) * hermite(k, x); });
      break;
    }
  }
  return c;
}

TransformCheck reduced_3f3_check(const Rational& a, const Rational& d, std::size_t order) {
  reject_nonpositive_integer(d, "d");
  reject_zero(2 * a + 1, "2a+1");
  auto c = make_check("eq34-reduced", {{"a", a}, {"d", d}}, nullptr, order);
  const Rational prefactor = (1 - a / d) / (4 * a + 2);
  c.details.emplace_back("correction_prefactor", prefactor.str());
  const Rational three_halves(3, 2);
  c.lhs = identity_series(HyperSpec{{a / 2, a / 2 + kHalf, d + 1}, {a + kHalf, a + 1, d}}, -1, order).substitute(1, 2);
  c.rhs = identity_series(HyperSpec{{a / 2, a / 2 + kHalf}, {a, a + kHalf}}, -1, order).substitute(1, 2) +
          x_power(2, order) *
              identity_series(HyperSpec{{a / 2 + 1, a / 2 + three_halves}, {a + three_halves, a + 2}}, -1, order)
                  .substitute(1, 2) *
              prefactor;
  return c;
}

TransformCheck bessel_form(const Rational& a, std::size_t order) {
  reject_nonpositive_integer(a + kHalf, "a+1/2");
  auto c = make_check("bessel-form", {{"a", a}}, nullptr, order);
  c.lhs = identity_series(HyperSpec{{}, {a + kHalf}}, Rational(1, 4), order).substitute(1, 2);
  // I_nu(x) = sum (x/2)^{2k+nu} / (k! Gamma(k+nu+1)) with nu = a - 1/2; the
  // prefactor Gamma(a+1/2) (x/2)^{-nu} leaves Gamma(a+1/2)/Gamma(k+a+1/2) = 1/(a+1/2)_k.
  for (unsigned k = 0; 2 * k <= order; ++k) {
    c.rhs[2 * k] = pow(kHalf, 2 * static_cast<long>(k)) / (Rational(factorial(k)) * pochhammer(a + kHalf, k));
  }
  return c;
}

}  // namespace hypersum
