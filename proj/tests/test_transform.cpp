#include <array>
#include <map>

#include "doctest.h"
#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hyper.hpp"
#include "hypersum/transform.hpp"
#include "support.hpp"

using namespace hypersum;

namespace {

constexpr std::size_t kOrder = 24;

// Calls build() on random draws until `count` of them land in the domain.
template <typename Draw, typename Build>
int run_random(std::uint64_t salt, int count, Draw draw, Build build) {
  auto rng = testing::make_rng(salt);
  int passed = 0, attempts = 0;
  while (passed < count && attempts < 50 * count) {
    ++attempts;
    const auto params = draw(rng);
    try {
      const TransformCheck c = build(params);
      std::string where;
      for (const auto& [name, value] : c.params) where += " " + name + "=" + value.str();
      CHECK_MESSAGE(c.passed(), c.id << " " << c.phi << where << " failed at coefficient " << c.mismatch().value_or(0));
      ++passed;
    } catch (const PoleError&) {
    } catch (const DomainError&) {
    } catch (const SingularParameterError&) {
    }
  }
  return passed;
}

}  // namespace

TEST_CASE("derivative sequences") {
  CHECK(DerivativeSequence::parse("power_law:5/2").exponent() == Rational(5, 2));
  CHECK(DerivativeSequence::parse("power_law").exponent() == 1);
  CHECK(DerivativeSequence::parse("gaussian").name() == "gaussian");
  CHECK_THROWS_AS(DerivativeSequence::parse("sin"), ParseError);

  const auto g = DerivativeSequence::gaussian();
  // phi(t) = exp(-x^2 t^2/4): phi''(0) = -x^2/2, phi'(0) = 0
  CHECK(g.at_zero(2, 6) == TruncatedSeries::monomial(Rational(-1, 2), 2, 6));
  CHECK(g.at_zero(1, 6).is_zero());
  // phi'(1) = -(x^2/2) exp(-x^2/4)
  CHECK(g.at_one(1, 8) ==
        TruncatedSeries::monomial(Rational(-1, 2), 2, 8) * TruncatedSeries::exponential(Rational(-1, 4), 8).substitute(1, 2));
  const auto p = DerivativeSequence::power_law(2);
  // phi(t) = (1 + (1-t) x)^{-2}: phi'(0) = 2x (1+x)^{-3}, phi'(1) = 2x
  CHECK(p.at_one(1, 6) == TruncatedSeries::monomial(2, 1, 6));
  CHECK(p.at_zero(1, 6) == TruncatedSeries::monomial(2, 1, 6) * eval_series(HyperSpec{{3}, {}}, -1, 6));
  const auto c = DerivativeSequence::cosh();
  CHECK(c.at_zero(3, 6).is_zero());
  CHECK(c.at_one(0, 6)[2] == Rational(1, 2));
  CHECK(c.at_one(1, 6)[2] == 1);
}

TEST_CASE("forward Taylor shift: phi^(n)(1) = sum_k phi^(n+k)(0)/k!") {
  auto library = DerivativeSequence::library();
  library.push_back(DerivativeSequence::power_law(Rational(-3, 2)));
  for (const auto& phi : library) {
    for (unsigned n = 0; n <= 10; ++n) {
      TruncatedSeries sum(kOrder);
      for (unsigned k = 0; n + k <= kOrder; ++k) sum += phi.at_zero(n + k, kOrder) * (Rational(1) / Rational(factorial(k)));
      CHECK_MESSAGE(sum == phi.at_one(n, kOrder), phi.name() << " n=" << n);
    }
  }
}

TEST_CASE("inversion: phi^(k)(0) rebuilt from the data at t = 1") {
  for (const auto& phi : DerivativeSequence::library()) {
    for (unsigned k = 0; k <= 12; ++k) {
      CHECK_MESSAGE(reexpand_at_zero(phi, k, kOrder) == phi.at_zero(k, kOrder), phi.name() << " k=" << k);
    }
  }
}

TEST_CASE("Entry 8 and Entry 20 examples") {
  CHECK(entry8_check(1, DerivativeSequence::exp(), 16).passed());
  CHECK(entry8_check(Rational(3, 2), DerivativeSequence::power_law(2), 12).passed());
  const auto constant = entry8_check(Rational(2, 7), DerivativeSequence::power_law(0), 10);
  CHECK(constant.passed());
  CHECK(constant.lhs == TruncatedSeries::constant(1, 10));
  CHECK(entry20_check(1, 3, DerivativeSequence::exp(), 16).passed());
  CHECK(entry20_check(Rational(1, 2), 2, DerivativeSequence::cosh(), 12).passed());
  // b = a: only the k = 0 weight survives on the right
  const auto same = entry20_check(Rational(3, 4), Rational(3, 4), DerivativeSequence::exp(), 12);
  CHECK(same.passed());
  CHECK(same.rhs == DerivativeSequence::exp().at_one(0, 12));
  CHECK_THROWS_AS(entry8_check(Rational(-1, 2), DerivativeSequence::exp(), 8), PoleError);
}

TEST_CASE("Theorem 1 examples") {
  const auto c = theorem1_check(1, 4, 3, DerivativeSequence::exp(), 14);
  CHECK(c.passed());
  REQUIRE_FALSE(c.details.empty());
  CHECK(c.details[0] == std::pair<std::string, std::string>{"f", "3"});
  const auto c2 = theorem1_check(1, 3, 2, DerivativeSequence::exp(), 14);
  CHECK(c2.passed());
  CHECK(c2.details[0].second == "2");
  CHECK(theorem1_check(Rational(2, 3), 5, Rational(7, 2), DerivativeSequence::power_law(0), 10).passed());
  CHECK_THROWS_AS(theorem1_check(1, 4, 1, DerivativeSequence::exp(), 10), SingularParameterError);
}

TEST_CASE("Theorem 1 without the extra pair is Entry 20") {
  // With f = b - a - 1 the right weights (b-a-1)_k (f+1)_k/(f)_k collapse to (b-a)_k.
  auto rng = testing::make_rng(50);
  for (int i = 0; i < 30; ++i) {
    const Rational a = testing::random_rational(rng), b = testing::random_rational(rng);
    const Rational f = b - a - 1;
    if (f.is_nonpositive_integer()) continue;
    for (unsigned k = 0; k <= 12; ++k) {
      CHECK(pochhammer(b - a - 1, k) * pochhammer(f + 1, k) / pochhammer(f, k) == pochhammer(b - a, k));
    }
  }
}

TEST_CASE("Theorem 2 examples") {
  CHECK(theorem2_check(1, 3, DerivativeSequence::exp(), 16).passed());
  CHECK(theorem2_check(Rational(1, 2), 1, DerivativeSequence::gaussian(), 12).passed());
  const auto reduced = theorem2_check(1, 2, DerivativeSequence::exp(), 16);
  CHECK(reduced.passed());
  REQUIRE(reduced.odd_block.has_value());
  CHECK(reduced.odd_block->is_zero());
  CHECK_THROWS_AS(theorem2_check(1, 0, DerivativeSequence::exp(), 8), DomainError);
}

TEST_CASE("property: Theorem 2 at d = 2a is Entry 8 for every phi") {
  auto rng = testing::make_rng(51);
  for (const auto& phi : DerivativeSequence::library()) {
    for (int i = 0; i < 3; ++i) {
      const Rational a = testing::random_positive(rng);
      const auto t2 = theorem2_check(a, 2 * a, phi, 16);
      const auto e8 = entry8_check(a, phi, 16);
      CHECK(t2.odd_block->is_zero());
      CHECK(t2.lhs == e8.lhs);
      CHECK(t2.rhs == e8.rhs);
      CHECK(t2.passed());
    }
  }
}

TEST_CASE("property: random transform checks") {
  for (const auto& phi : DerivativeSequence::library()) {
    CHECK(run_random(52, 5, [](auto& rng) { return testing::random_rational(rng); },
                     [&](const Rational& a) { return entry8_check(a, phi, 16); }) == 5);
    CHECK(run_random(53, 5,
                     [](auto& rng) { return std::pair{testing::random_rational(rng), testing::random_rational(rng)}; },
                     [&](const auto& p) { return entry20_check(p.first, p.second, phi, 16); }) == 5);
    CHECK(run_random(54, 5,
                     [](auto& rng) {
                       return std::array<Rational, 3>{testing::random_rational(rng), testing::random_rational(rng),
                                                      testing::random_rational(rng)};
                     },
                     [&](const auto& p) { return theorem1_check(p[0], p[1], p[2], phi, 16); }) == 5);
  }
}

TEST_CASE("generating-function identity examples") {
  const auto eq31 = generating_identity(GeneratingId::eq31, {{"a", 1}, {"d", 3}});
  CHECK(eq31.passed());
  CHECK(eq31.lhs[1] == Rational(-1, 9));
  CHECK(eq31.rhs[1] == Rational(-1, 9));
  const auto eq33 = generating_identity(GeneratingId::eq33, {{"a", 2}, {"b", Rational(1, 3)}, {"d", 5}});
  CHECK(eq33.passed());
  CHECK(eq33.lhs[0] == 1);
  const auto contiguous = generating_identity(
      GeneratingId::contiguous_2f2, {{"alpha", 1}, {"beta", 2}, {"gamma", 3}, {"delta", 1}}, 10);
  CHECK(contiguous.passed());
  CHECK_THROWS_AS(generating_identity(GeneratingId::eq31, {{"a", 1}}), DomainError);
  CHECK_THROWS_AS(generating_identity(GeneratingId::eq34, {{"a", 1}, {"d", 0}}), DomainError);
  CHECK_THROWS_AS(generating_identity(GeneratingId::closing_3f3, {{"a", 2}, {"b", 5}, {"d", 1}}), SingularParameterError);
  CHECK(parse_generating("hermite-2f2-odd") == GeneratingId::hermite_2f2_odd);
  CHECK_FALSE(parse_generating("eq35").has_value());
}

TEST_CASE("closing identity needs the 1/k! weight") {
  // Dropping the k! reproduces the misprinted form, which must be caught.
  const Rational a(2, 3), b(9, 5), d(5, 4);
  const auto c = generating_identity(GeneratingId::closing_3f3, {{"a", a}, {"b", b}, {"d", d}}, 12);
  CHECK(c.passed());
  const Rational f = 2 * d * (b - a - 1) / (2 * d - a);
  const auto x = TruncatedSeries::monomial(1, 1, 12);
  TruncatedSeries misprint(12);
  for (unsigned k = 0; k <= 12; ++k) {
    const Rational w = pochhammer(b - a - 1, k) * pochhammer(f + 1, k) / (pochhammer(b, k) * pochhammer(f, k));
    misprint += TruncatedSeries::monomial(w, k, 12) * hermite(k, x);
  }
  CHECK(first_mismatch(c.lhs, misprint).has_value());
}

TEST_CASE("3F3 reduction chain") {
  CHECK(run_random(56, 10,
                   [](auto& rng) { return std::pair{testing::random_rational(rng), testing::random_rational(rng)}; },
                   [](const auto& p) { return reduced_3f3_check(p.first, p.second); }) == 10);
}

TEST_CASE("property: random generating-function identity draws") {
  for (GeneratingId id : {GeneratingId::eq31, GeneratingId::eq32, GeneratingId::eq33, GeneratingId::eq34,
                        GeneratingId::hermite_2f2_even, GeneratingId::hermite_2f2_odd, GeneratingId::contiguous_2f2,
                        GeneratingId::closing_3f3}) {
    const auto names = generating_params(id);
    const int passed = run_random(
        60 + static_cast<std::uint64_t>(id), 10,
        [&](auto& rng) {
          std::map<std::string, Rational> params;
          for (const auto& name : names) params[name] = testing::random_rational(rng);
          return params;
        },
        [&](const auto& params) { return generating_identity(id, params); });
    CHECK_MESSAGE(passed == 10, generating_name(id));
  }
}

TEST_CASE("Bessel form") {
  const auto b = bessel_form(Rational(3, 2), 8);
  CHECK(b.passed());
  CHECK(b.lhs[0] == 1);
  // a = 1/2 is the I_0 series sum (x/2)^{2k} / k!^2
  const auto i0 = bessel_form(Rational(1, 2), 12);
  for (unsigned k = 0; 2 * k <= 12; ++k) {
    CHECK(i0.lhs[2 * k] == Rational(1) / (pow(Rational(4), static_cast<long>(k)) * Rational(Integer(factorial(k) * factorial(k)))));
  }
  CHECK_THROWS_AS(bessel_form(Rational(-3, 2)), DomainError);
}
