#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tdlab/error.hpp"
#include "tdlab/inverse.hpp"

using support::block;
using support::to_mpq;
using tdlab::Block;
using tdlab::Rational;
using tdlab::Verdict;
namespace inv = tdlab::inverse;

namespace {

using Seq = std::vector<mpq_class>;

// Straight expansion of the recurrence over GMP rationals, indexed from 0.
Seq naive_build(int m) {
  Seq x = {1, 0, 0};
  for (int stage = 1; stage < m; ++stage) {
    Seq next = x;
    next.insert(next.end(), x.begin(), x.end());
    for (int r = stage; r >= 0; --r) {
      const mpq_class t(r, stage + 1);
      for (const auto& v : x) next.push_back(mpq_class(t * v));
    }
    for (auto& v : next) v.canonicalize();
    x = std::move(next);
  }
  return x;
}

Seq as_seq(const Block& b) {
  Seq out;
  for (const auto& s : b.symbols()) out.push_back(to_mpq(s.value()));
  return out;
}

bool naive_c3(const Seq& x, const std::vector<std::int64_t>& times, int kmax) {
  const auto len = static_cast<std::int64_t>(x.size());
  for (int k = 1; k <= kmax; ++k) {
    const std::int64_t n = times[static_cast<std::size_t>(k - 1)];
    for (std::int64_t i = 0; i + n + k - 1 < len; ++i) {
      bool all_zero = true;
      for (int d = 0; d < k; ++d) all_zero = all_zero && x[static_cast<std::size_t>(i + d)] == 0;
      if (all_zero) continue;
      for (int d = 0; d < k; ++d) {
        if (abs(x[static_cast<std::size_t>(i + d)] - x[static_cast<std::size_t>(i + n + d)]) >= mpq_class(1, k)) {
          return false;
        }
      }
    }
  }
  return true;
}

bool naive_c2(const Seq& x, const std::vector<std::int64_t>& times, int jmax) {
  const auto len = static_cast<std::int64_t>(x.size());
  for (int j = 1; j <= jmax; ++j) {
    const std::int64_t n = times[static_cast<std::size_t>(j - 1)];
    for (std::int64_t i = 0; i + n < len; ++i) {
      mpq_class eps = 0;
      for (std::int64_t d = 1; d <= n; ++d) eps = std::max(eps, x[static_cast<std::size_t>(i + d)]);
      if (x[static_cast<std::size_t>(i)] > eps + mpq_class(1, j + 1)) return false;
    }
  }
  return true;
}

std::int64_t naive_zero_run(const Seq& x) {
  std::int64_t best = -1, run = 0;
  for (const auto& v : x) {
    if (v == 0) {
      ++run;
      continue;
    }
    if (v == 1) best = std::max(best, run);
    run = 0;
  }
  return best;
}

}  // namespace

TEST(Inverse, FirstStageIsOneZeroZero) {
  const auto s = inv::build(1);
  EXPECT_EQ(s.prefix, block(1, "1,0,0"));
  EXPECT_EQ(s.lengths, std::vector<std::int64_t>{3});
}

TEST(Inverse, SecondStageHandExpansion) {
  const auto s = inv::step(inv::initial_state());
  EXPECT_EQ(s.prefix, block(1, "1,0,0,1,0,0,1/2,0,0,0,0,0"));
  EXPECT_EQ(s.length_at(2), 12);
}

TEST(Inverse, ThirdStageCopies) {
  const auto x2 = inv::build(2).prefix;
  const auto x3 = inv::build(3).prefix;
  ASSERT_EQ(x3.length(), 60);
  const Rational scales[] = {Rational(1), Rational(1), Rational(2, 3), Rational(1, 3), Rational(0)};
  for (int c = 0; c < 5; ++c) {
    for (std::int64_t i = 0; i < 12; ++i) {
      ASSERT_EQ(x3[1 + 12 * c + i].value(), scales[c] * x2[1 + i].value());
    }
  }
}

TEST(Inverse, LengthsThroughStageEight) {
  const auto s = inv::build(8);
  EXPECT_EQ(s.lengths, (std::vector<std::int64_t>{3, 12, 60, 360, 2520, 20160, 181440, 1814400}));
  EXPECT_EQ(s.prefix.length(), 1814400);
  EXPECT_EQ(inv::build(6).prefix.length(), 20160);
}

TEST(Inverse, MatchesNaiveExpansion) {
  for (int m = 1; m <= 5; ++m) ASSERT_EQ(as_seq(inv::build(m).prefix), naive_build(m)) << "stage " << m;
}

TEST(Inverse, PrefixConsistency) {
  const auto deep = inv::build(6);
  for (int m = 1; m < 6; ++m) {
    const auto shallow = inv::build(m).prefix;
    ASSERT_EQ(tdlab::window(deep.prefix, 1, shallow.length()), shallow) << "stage " << m;
  }
}

TEST(Inverse, ResourceCapStopsBeforeAllocation) {
  EXPECT_THROW(inv::build(4, 100), tdlab::ResourceCapError);
  EXPECT_NO_THROW(inv::build(4, 360));
  EXPECT_THROW(inv::build(0), tdlab::PreconditionError);
}

TEST(Inverse, ZeroRunAtCopyJunction) {
  const auto r = inv::verify(inv::build(3), inv::Condition::C1, 5);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.field("max_run"), "5");
  // 0^5 1 spans the end of the first x^2 copy and the start of the second.
  EXPECT_EQ(r.field("position"), "8");
  EXPECT_EQ(inv::verify(inv::build(3), inv::Condition::C1, 6).verdict, Verdict::Fail);
}

TEST(Inverse, RigidityOnThirdStage) {
  const auto s = inv::build(3);
  EXPECT_EQ(inv::verify(s, inv::Condition::C3, 2).verdict, Verdict::Pass);
  // Second copy start: x(13) = 1, x(25) = 2/3.
  EXPECT_EQ(s.prefix[13].value(), Rational(1));
  EXPECT_EQ(s.prefix[25].value(), Rational(2, 3));
  EXPECT_LT(tdlab::abs_diff(s.prefix[13], s.prefix[25]), Rational(1, 2));
  EXPECT_THROW(inv::verify(s, inv::Condition::C3, 3), tdlab::PreconditionError);
}

TEST(Inverse, SmallnessIsTightOnSecondStage) {
  const auto r = inv::verify(inv::build(2), inv::Condition::C2Prime, 1);
  EXPECT_EQ(r.verdict, Verdict::Pass);
  EXPECT_EQ(r.field("tight_j"), "1");
  EXPECT_EQ(r.field("tight_position"), "4");
  EXPECT_EQ(r.field("tight"), "2");
  // The scaled copy starts with 1/2 followed by n_1 = 3 zeros: 1/2 <= 0 + 1/2.
  const auto x = inv::build(2).prefix;
  EXPECT_EQ(x[7].value(), Rational(1, 2));
  EXPECT_TRUE(x.is_zero_on(8, 10));
}

TEST(Inverse, SmallnessCatchesMutation) {
  auto s = inv::build(3);
  s.prefix = s.prefix.with_symbol(9, tdlab::Symbol::one());
  const auto r = inv::verify(s, inv::Condition::C2Prime, 2);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_FALSE(r.field("position").empty());
}

TEST(Inverse, TailsAreZero) {
  for (int m = 1; m <= 6; ++m) EXPECT_EQ(inv::verify(inv::build(m), inv::Condition::Tails).verdict, Verdict::Pass);
  auto s = inv::build(3);
  s.prefix = s.prefix.with_symbol(58, tdlab::Symbol(1, 5));
  const auto r = inv::verify(s, inv::Condition::Tails);
  EXPECT_EQ(r.verdict, Verdict::Fail);
  EXPECT_EQ(r.field("position"), "58");
}

TEST(Inverse, LiteralSmallnessIsRefutedBySecondStage) {
  const auto w = inv::falsify_literal_smallness(inv::build(2).prefix, 3);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->position, 4);
  EXPECT_EQ(support::render(Block(0, w->window)), "1,0,0,1/2,0");
  EXPECT_EQ(w->epsilon, Rational(1, 2));
  const auto r = inv::literal_smallness_report(inv::build(2).prefix, 3);
  EXPECT_EQ(r.verdict, Verdict::Info);
  EXPECT_EQ(r.field("window"), "1,0,0,1/2,0");
}

TEST(InverseProperty, VerifiersAgreeWithNaiveScans) {
  for (int m = 2; m <= 4; ++m) {
    const auto s = inv::build(m);
    const Seq x = naive_build(m);
    for (int k = 1; k < m; ++k) {
      ASSERT_EQ(inv::verify(s, inv::Condition::C3, k).passed(), naive_c3(x, s.lengths, k));
      ASSERT_EQ(inv::verify(s, inv::Condition::C2Prime, k).passed(), naive_c2(x, s.lengths, k));
    }
    ASSERT_EQ(inv::verify(s, inv::Condition::C1, 1).field("max_run"), std::to_string(naive_zero_run(x)));
  }
}

TEST(InverseProperty, VerifiersAgreeWithNaiveScansUnderMutation) {
  std::mt19937_64 rng(31);
  const auto base = inv::build(4);
  std::uniform_int_distribution<std::int64_t> pos(1, base.prefix.length());
  int failures_seen = 0;
  for (int iter = 0; iter < 150; ++iter) {
    auto s = base;
    const std::int64_t p = pos(rng);
    s.prefix = s.prefix.with_symbol(p, support::random_symbol(rng, 6));
    const Seq x = as_seq(s.prefix);
    for (int k = 1; k <= 3; ++k) {
      const bool c3 = naive_c3(x, s.lengths, k);
      const bool c2 = naive_c2(x, s.lengths, k);
      ASSERT_EQ(inv::verify(s, inv::Condition::C3, k).passed(), c3) << "position " << p << " k " << k;
      ASSERT_EQ(inv::verify(s, inv::Condition::C2Prime, k).passed(), c2) << "position " << p << " k " << k;
      failures_seen += !c3 + !c2;
    }
  }
  EXPECT_GT(failures_seen, 0);
}

TEST(InverseProperty, RigidityHoldsForEveryEarlierTime) {
  for (int m = 2; m <= 6; ++m) {
    const auto s = inv::build(m);
    ASSERT_EQ(inv::verify(s, inv::Condition::C3, m - 1).verdict, Verdict::Pass) << "stage " << m;
    ASSERT_EQ(inv::verify(s, inv::Condition::C2Prime, m - 1).verdict, Verdict::Pass) << "stage " << m;
    const auto c1 = inv::verify(s, inv::Condition::C1, 1);
    ASSERT_GE(std::stoll(c1.field("max_run")), m);
  }
}

TEST(InverseProperty, ScaledPrefixesKeepRigidityAndSmallness) {
  const auto s = inv::build(4);
  for (const auto& t : {tdlab::Symbol(1, 1), tdlab::Symbol(1, 2), tdlab::Symbol(5, 7), tdlab::Symbol(1, 97)}) {
    const Block scaled = tdlab::scale(t, s.prefix);
    EXPECT_TRUE(inv::verify_rigidity(scaled, s.lengths, 3).passed()) << t.str();
    EXPECT_TRUE(inv::verify_smallness(scaled, s.lengths, 3).passed()) << t.str();
  }
}

TEST(InverseProperty, DenominatorsDivideStageProducts) {
  for (int m = 1; m <= 6; ++m) {
    mpz_class product = 1;
    for (int j = 1; j < m; ++j) product *= j + 1;
    const auto s = inv::build(m);
    for (const auto& sym : s.prefix.symbols()) {
      const mpq_class v = to_mpq(sym.value());
      ASSERT_TRUE(mpz_divisible_p(product.get_mpz_t(), v.get_den().get_mpz_t()))
          << "stage " << m << " value " << v.get_str() << " product " << product.get_str();
    }
  }
}
