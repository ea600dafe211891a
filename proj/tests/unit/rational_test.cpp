#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "support.hpp"
#include "tdlab/error.hpp"
#include "tdlab/rational.hpp"
#include "tdlab/symbol.hpp"

using tdlab::Rational;
using support::to_mpq;

namespace {

constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

// Mixes small values with values near the 64-bit limits so the fast path
// overflows regularly.
Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<std::int64_t> small(-50, 50);
  std::uniform_int_distribution<std::int64_t> wide(kMin + 1, kMax);
  std::uniform_int_distribution<std::int64_t> near(kMax - 1000, kMax);
  const auto pick = [&]() -> std::int64_t {
    switch (kind(rng)) {
      case 0: return small(rng);
      case 1: return wide(rng);
      case 2: return near(rng);
      default: return -near(rng);
    }
  };
  std::int64_t den = 0;
  while (den == 0) den = pick();
  return Rational(pick(), den);
}

bool fits_int64(const mpz_class& z) {
  return z >= mpz_class(std::to_string(kMin + 1)) && z <= mpz_class(std::to_string(kMax));
}

}  // namespace

TEST(Rational, ReducesToLowestTermsWithPositiveDenominator) {
  EXPECT_EQ(Rational(6, -4).str(), "-3/2");
  EXPECT_EQ(Rational(0, -7).str(), "0/1");
  EXPECT_EQ(Rational(kMin, kMin).str(), "1/1");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_THROW(Rational(1, 0), tdlab::DomainError);
}

TEST(Rational, ParsesPlainAndCanonicalForms) {
  EXPECT_EQ(Rational::parse("4/6"), Rational(2, 3));
  EXPECT_EQ(Rational::parse("-7"), Rational(-7));
  EXPECT_EQ(Rational::parse_canonical("2/3"), Rational(2, 3));
  EXPECT_THROW(Rational::parse_canonical("4/6"), tdlab::ParseError);
  EXPECT_THROW(Rational::parse_canonical("1"), tdlab::ParseError);
  EXPECT_THROW(Rational::parse("1/0"), tdlab::ParseError);
  EXPECT_THROW(Rational::parse("1/x"), tdlab::ParseError);
  EXPECT_THROW(Rational::parse(""), tdlab::ParseError);
  const std::string huge = "123456789012345678901234567891/2";
  EXPECT_EQ(Rational::parse(huge).str(), huge);
  EXPECT_FALSE(Rational::parse(huge).is_small());
}

TEST(Rational, DivisionByZeroIsRejected) {
  EXPECT_THROW(Rational(1) / Rational(0), tdlab::DomainError);
}

TEST(Rational, OverflowFallsBackAndDemotes) {
  const Rational big = Rational(kMax) + Rational(kMax);
  EXPECT_FALSE(big.is_small());
  EXPECT_EQ(big.str(), mpz_class(mpz_class(std::to_string(kMax)) * 2).get_str() + "/1");
  const Rational back = big - Rational(kMax);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Rational(kMax));
  const Rational tiny = Rational(1, kMax) * Rational(1, kMax - 1);
  EXPECT_FALSE(tiny.is_small());
  EXPECT_TRUE((tiny * Rational(kMax)).is_small());
}

TEST(Rational, PowersOfOneHalf) {
  EXPECT_EQ(tdlab::pow2_neg(0), Rational(1));
  EXPECT_EQ(tdlab::pow2_neg(3), Rational(1, 8));
  EXPECT_EQ(to_mpq(tdlab::pow2_neg(100)), mpq_class(1, 1) / mpq_class(mpz_class(1) << 100));
  EXPECT_THROW(tdlab::pow2_neg(-1), tdlab::DomainError);
}

TEST(RationalProperty, ArithmeticMatchesGmp) {
  std::mt19937_64 rng(20261016);
  for (int iter = 0; iter < 20000; ++iter) {
    const Rational a = random_rational(rng);
    const Rational b = random_rational(rng);
    const mpq_class qa = to_mpq(a);
    const mpq_class qb = to_mpq(b);
    ASSERT_EQ(to_mpq(a + b), mpq_class(qa + qb)) << a << " + " << b;
    ASSERT_EQ(to_mpq(a - b), mpq_class(qa - qb)) << a << " - " << b;
    ASSERT_EQ(to_mpq(a * b), mpq_class(qa * qb)) << a << " * " << b;
    if (!b.is_zero()) ASSERT_EQ(to_mpq(a / b), mpq_class(qa / qb)) << a << " / " << b;
    ASSERT_EQ(to_mpq(-a), mpq_class(-qa));
    ASSERT_EQ(a < b, qa < qb);
    ASSERT_EQ(a == b, qa == qb);
    ASSERT_EQ(a.sign(), sgn(qa));
  }
}

TEST(RationalProperty, RepresentationIsCanonical) {
  std::mt19937_64 rng(7);
  Rational acc(1);
  mpq_class oracle(1);
  for (int iter = 0; iter < 3000; ++iter) {
    const Rational step = random_rational(rng);
    if (step.is_zero()) continue;
    switch (iter % 3) {
      case 0: acc = acc * step; oracle *= to_mpq(step); break;
      case 1: acc = acc / step; oracle /= to_mpq(step); break;
      default: acc = acc + step; oracle += to_mpq(step); break;
    }
    ASSERT_EQ(to_mpq(acc), oracle);
    ASSERT_EQ(acc.str(), oracle.get_str().find('/') == std::string::npos ? oracle.get_str() + "/1" : oracle.get_str());
    ASSERT_EQ(acc.is_small(), fits_int64(oracle.get_num()) && fits_int64(oracle.get_den()));
    if (iter % 50 == 0) {
      acc = Rational(1);
      oracle = 1;
    }
  }
}

TEST(RationalProperty, CopiesAndMovesPreserveBigValues) {
  const Rational big = Rational::parse("-98765432109876543210987654321/1234567");
  Rational copy = big;
  EXPECT_EQ(copy, big);
  Rational moved = std::move(copy);
  EXPECT_EQ(moved, big);
  copy = moved;
  EXPECT_EQ(copy.str(), big.str());
  copy = Rational(3);
  EXPECT_TRUE(copy.is_small());
}

TEST(Symbol, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(tdlab::Symbol(3, 2), tdlab::DomainError);
  EXPECT_THROW(tdlab::Symbol(-1, 2), tdlab::DomainError);
  EXPECT_NO_THROW(tdlab::Symbol(1, 1));
  EXPECT_THROW(tdlab::Symbol::parse("2/4"), tdlab::ParseError);
}

TEST(Symbol, ProductStaysExact) {
  EXPECT_EQ(tdlab::Symbol(2, 3) * tdlab::Symbol(1, 2), tdlab::Symbol(1, 3));
  EXPECT_EQ(tdlab::abs_diff(tdlab::Symbol(1, 3), tdlab::Symbol(1, 1)), Rational(2, 3));
}
