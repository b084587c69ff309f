#include "doctest.h"
#include "hypersum/closed_forms.hpp"
#include "hypersum/combinatorics.hpp"
#include "hypersum/error.hpp"
#include "support.hpp"

using namespace hypersum;

namespace {

NumericValue lhs_numeric(const ScaledSpec& s, int digits) {
  NumericOptions opt;
  opt.digits = digits;
  NumericValue v = eval_numeric(s.spec, 1, opt);
  v.estimate *= s.prefactor;
  v.tail_bound *= abs(s.prefactor);
  return v;
}

bool agrees(const NumericValue& lhs, const SumValue& rhs) {
  return abs(lhs.estimate - rhs.numeric.estimate) <= lhs.tail_bound + rhs.numeric.tail_bound;
}

Rational random_d(std::mt19937_64& rng) {
  Rational d;
  do {
    d = testing::random_rational(rng, 30, 7);
  } while (d.is_nonpositive_integer());
  return d;
}

}  // namespace

TEST_CASE("terminating sums at argument 2") {
  CHECK(f32_even(1, 1, 3) == Rational(1, 3));
  CHECK(f32_even(0, Rational(5, 7), Rational(2, 9)) == 1);
  CHECK(f32_even(2, Rational(1, 2), 1) == Rational(3, 8));
  CHECK(eval_terminating(f32_lhs(4, Rational(1, 2), 1), 2) == Rational(3, 8));
  CHECK(f32_odd(0, 1, 1) == Rational(-1, 3));
  CHECK(eval_terminating(f32_lhs(1, 1, 1), 2) == Rational(-1, 3));
  CHECK(f32_odd(0, 1, 4) == Rational(1, 6));
  CHECK(f21_even(1, 1) == Rational(1, 3));
  CHECK(f21_odd(1, 1) == 0);
  CHECK(f21_even(0, Rational(3, 5)) == 1);
  CHECK_THROWS_AS(f32_odd(0, 1, 0), DomainError);
  CHECK_THROWS_AS(f32_odd(2, Rational(-1, 2), 3), DomainError);
  CHECK_THROWS_AS(f32_even(2, 1, -3), DomainError);
}

TEST_CASE("property: closed forms equal direct terminating sums") {
  auto rng = testing::make_rng(40);
  int checked = 0, rejected = 0;
  // Each closed form is compared only where it accepts its parameters; the
  // direct sum is the oracle.
  const auto compare = [&](auto closed, const HyperSpec& lhs) {
    Rational value;
    try {
      value = closed();
    } catch (const DomainError&) {
      ++rejected;
      return;
    }
    CHECK(eval_terminating(lhs, 2) == value);
    ++checked;
  };
  while (checked < 800) {
    const unsigned n = static_cast<unsigned>(testing::uniform(rng, 0, 8));
    const Rational a = testing::random_rational(rng);
    const Rational d = random_d(rng);
    compare([&] { return f32_even(n, a, d); }, f32_lhs(2 * n, a, d));
    compare([&] { return f32_odd(n, a, d); }, f32_lhs(2 * n + 1, a, d));
    compare([&] { return f21_even(n, a); }, f21_lhs(2 * n, a));
    compare([&] { return f21_odd(n, a); }, f21_lhs(2 * n + 1, a));
  }
  CHECK(rejected > 0);
}

TEST_CASE("closed forms reject early-terminating negative integer a") {
  // a = -3 ends the series at k = 3, before the 2a+1 = -5 pole, but the sum is
  // then no longer the analytic closed form: it even depends on d.
  CHECK(eval_terminating(f32_lhs(6, -3, 30), 2) != eval_terminating(f32_lhs(6, -3, 7), 2));
  CHECK_THROWS_AS(f32_even(3, -3, 30), DomainError);
  CHECK_THROWS_AS(f21_odd(1, 0), DomainError);
  CHECK_NOTHROW(f32_even(2, -3, 30));
}

TEST_CASE("property: f32_odd vanishes on d = 2a and f32_even ignores d") {
  auto rng = testing::make_rng(41);
  for (int i = 0; i < 50; ++i) {
    const Rational a = testing::random_positive(rng);
    const unsigned n = static_cast<unsigned>(testing::uniform(rng, 0, 8));
    CHECK(eval_terminating(f32_lhs(2 * n + 1, a, 2 * a), 2) == 0);
    const Rational base = eval_terminating(f32_lhs(2 * n, a, 1), 2);
    CHECK(eval_terminating(f32_lhs(2 * n, a, random_d(rng)), 2) == base);
  }
}

TEST_CASE("Karlsson-Minton examples") {
  const PrecisionContext ctx(50);
  const auto v = karlsson_minton_rhs(1, 1, 5, KMFamily({{2, 1}}), ctx);
  REQUIRE(v.is_exact());
  CHECK(*v.exact == Rational(5, 3));
  CHECK(agrees(eval_numeric(karlsson_minton_lhs(1, 1, 5, KMFamily({{2, 1}})), 1), v));

  const auto zero = karlsson_minton_rhs(0, Rational(2, 3), Rational(9, 2), KMFamily({{3, 2}}), ctx);
  REQUIRE(zero.is_exact());
  CHECK(*zero.exact == 1);

  const auto half = karlsson_minton_rhs(Rational(1, 2), Rational(1, 2), 4, KMFamily({{3, 1}}), ctx);
  CHECK_FALSE(half.is_exact());
  CHECK(agrees(eval_numeric(karlsson_minton_lhs(Rational(1, 2), Rational(1, 2), 4, KMFamily({{3, 1}})), 1), half));

  CHECK_THROWS_AS(karlsson_minton_rhs(1, 1, 3, KMFamily({{2, 1}}), ctx), ConvergenceDomainError);
  // the route choice does not change the value
  const auto hyper = karlsson_minton_rhs(1, 1, 5, KMFamily({{2, 1}}), ctx, CoefficientRoute::hyper);
  CHECK(*hyper.exact == Rational(5, 3));
}

TEST_CASE("property: Karlsson-Minton sums agree numerically") {
  auto rng = testing::make_rng(42);
  const PrecisionContext ctx(45);
  NumericOptions opt;
  opt.digits = 45;
  int checked = 0;
  while (checked < 25) {
    std::vector<KMPair> pairs;
    const long r = testing::uniform(rng, 1, 2);
    for (long i = 0; i < r; ++i) {
      pairs.push_back({testing::random_positive(rng, 12, 4), static_cast<unsigned>(testing::uniform(rng, 1, 2))});
    }
    const KMFamily family(pairs);
    const Rational a = testing::random_positive(rng, 8, 3), b = testing::random_positive(rng, 8, 3);
    // half-integer excess exercises the numeric gamma path
    const Rational c = a + b + Rational(family.total()) + (checked % 2 == 0 ? Rational(1, 2) : Rational(3, 2));
    try {
      const auto rhs = karlsson_minton_rhs(a, b, c, family, ctx);
      const auto lhs = eval_numeric(karlsson_minton_lhs(a, b, c, family), 1, opt);
      CHECK(agrees(lhs, rhs));
      CHECK(lhs.tail_bound < testing::ten_to(-40));
      ++checked;
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("Entry 9 and its extensions") {
  const PrecisionContext ctx(50);
  // telescoping: sum_{k<=K} 2/(k(k+1)(k+2)) = 1/2 - 1/((K+1)(K+2))
  Rational partial;
  for (long k = 1; k <= 30; ++k) partial += Rational(2) / Rational(k * (k + 1) * (k + 2));
  CHECK(partial == Rational(1, 2) - Rational(1, 31 * 32));
  CHECK(*entry9(1, 3, ctx).exact == Rational(1, 2));
  CHECK(agrees(lhs_numeric(entry9_lhs(1, 3), 50), entry9(1, 3, ctx)));

  // sum 3/(k(k+1)(k+3)) = 7/12 by partial fractions 1/k - 3/(2(k+1)) + 1/(2(k+3))
  Rational partial_ext;
  const long K = 40;
  for (long k = 1; k <= K; ++k) partial_ext += Rational(3) / Rational(k * (k + 1) * (k + 3));
  const Rational tail = Rational(3, 2 * (K + 1)) - Rational(1, 2) * (Rational(1, K + 1) + Rational(1, K + 2) + Rational(1, K + 3));
  CHECK(partial_ext + tail == Rational(7, 12));
  const KMFamily one({{2, 1}});
  CHECK(*entry9_extended(1, 4, one, ctx).exact == Rational(7, 12));
  CHECK(*entry9_r1(1, 4, 2, 1, ctx).exact == Rational(7, 12));
  CHECK(agrees(lhs_numeric(entry9_lhs(1, 4, one), 50), entry9_extended(1, 4, one, ctx)));
  CHECK(*entry9_extended(1, 3, KMFamily(), ctx).exact == Rational(1, 2));
  CHECK(*entry9_r1(1, 3, 5, 0, ctx).exact == Rational(1, 2));
  CHECK(*entry9(0, Rational(7, 3), ctx).exact == 0);

  const auto two = entry9_extended(2, 6, KMFamily({{3, 1}}), ctx);
  REQUIRE(two.is_exact());
  CHECK(agrees(lhs_numeric(entry9_lhs(2, 6, KMFamily({{3, 1}})), 50), two));
  CHECK(*entry9_r1(1, 5, 3, 2, ctx).exact == *entry9_extended(1, 5, KMFamily({{3, 2}}), ctx).exact);

  const auto half = entry9(Rational(1, 2), 2, ctx);
  CHECK_FALSE(half.is_exact());
  CHECK(agrees(lhs_numeric(entry9_lhs(Rational(1, 2), 2), 50), half));

  CHECK_THROWS_AS(entry9(3, 3, ctx), ConvergenceDomainError);
  CHECK_THROWS_AS(entry9_extended(1, 2, one, ctx), ConvergenceDomainError);
}

TEST_CASE("property: entry9_r1 equals entry9_extended exactly") {
  auto rng = testing::make_rng(43);
  const PrecisionContext ctx(50);
  int checked = 0;
  while (checked < 50) {
    const Rational a = Rational(testing::uniform(rng, 1, 6));
    const unsigned m = static_cast<unsigned>(testing::uniform(rng, 0, 3));
    const Rational c = a + Rational(m) + testing::random_positive(rng, 30, 7);
    const Rational d = testing::random_positive(rng, 30, 7);
    try {
      const auto r1 = entry9_r1(a, c, d, m, ctx);
      const auto ext = entry9_extended(a, c, KMFamily({{d, m}}), ctx);
      const auto ext_hyper = entry9_extended(a, c, KMFamily({{d, m}}), ctx, CoefficientRoute::hyper);
      REQUIRE(r1.is_exact());
      CHECK(*r1.exact == *ext.exact);
      CHECK(*ext.exact == *ext_hyper.exact);
      ++checked;
    } catch (const PoleError&) {
    }
  }
}

TEST_CASE("property: extended Entry 9 agrees with direct summation") {
  auto rng = testing::make_rng(44);
  const PrecisionContext ctx(45);
  int checked = 0;
  while (checked < 20) {
    std::vector<KMPair> pairs{{testing::random_positive(rng, 12, 4), static_cast<unsigned>(testing::uniform(rng, 1, 2))}};
    const KMFamily family(pairs);
    const Rational a = checked % 2 == 0 ? Rational(testing::uniform(rng, 1, 4)) : testing::random_positive(rng, 12, 5);
    const Rational c = a + Rational(family.total()) + testing::random_positive(rng, 12, 4);
    try {
      const auto rhs = entry9_extended(a, c, family, ctx);
      CHECK(agrees(lhs_numeric(entry9_lhs(a, c, family), 45), rhs));
      ++checked;
    } catch (const PoleError&) {
    }
  }
}
