#include <gtest/gtest.h>

#include <set>

#include "tdlab/error.hpp"
#include "tdlab/finite_oracle.hpp"

using namespace tdlab::oracle;
using tdlab::Verdict;

namespace {

using Pairs = std::set<std::pair<int, int>>;

Pairs pairs(const Partition& p) {
  Pairs out;
  for (int a = 0; a < p.size(); ++a) {
    for (int b = 0; b < p.size(); ++b) {
      if (p.related(a, b)) out.insert({a, b});
    }
  }
  return out;
}

Pairs image(const FiniteSystem& sys, const Pairs& r) {
  Pairs out;
  for (const auto& [a, b] : r) out.insert({sys(a), sys(b)});
  return out;
}

// Every labelling of the points, deduplicated by the relation it induces.
std::vector<Pairs> all_relations(int n) {
  std::set<Pairs> seen;
  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  while (true) {
    Pairs r;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (labels[static_cast<std::size_t>(a)] == labels[static_cast<std::size_t>(b)]) r.insert({a, b});
      }
    }
    seen.insert(r);
    int pos = n - 1;
    while (pos >= 0 && labels[static_cast<std::size_t>(pos)] == n - 1) labels[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++labels[static_cast<std::size_t>(pos)];
  }
  return {seen.begin(), seen.end()};
}

bool brute_td(const FiniteSystem& sys) {
  for (const auto& r : all_relations(sys.size())) {
    const Pairs img = image(sys, r);
    const bool inside = std::includes(r.begin(), r.end(), img.begin(), img.end());
    if (inside && img != r) return false;
  }
  return true;
}

std::vector<int> brute_omega(const FiniteSystem& sys, int x) {
  const int n = sys.size();
  int y = x;
  for (int i = 0; i < n; ++i) y = sys(y);
  std::set<int> out;
  for (int i = 0; i < n; ++i, y = sys(y)) out.insert(y);
  return {out.begin(), out.end()};
}

FiniteSystem chain() { return FiniteSystem({1, 2, 2}); }
FiniteSystem swap2() { return FiniteSystem({1, 0}); }

}  // namespace

TEST(FiniteOracle, SystemValidation) {
  EXPECT_THROW(FiniteSystem({}), tdlab::DomainError);
  EXPECT_THROW(FiniteSystem({0, 2}), tdlab::DomainError);
  EXPECT_TRUE(swap2().is_onto());
  EXPECT_FALSE(chain().is_onto());
  EXPECT_EQ(FiniteSystem::parse("1,2,2"), chain());
  EXPECT_THROW(FiniteSystem::parse("1,,2"), tdlab::ParseError);
  EXPECT_THROW(FiniteSystem::parse("1,a"), tdlab::ParseError);
  EXPECT_EQ(chain().serialize(), "FSYS n=3 map=1,2,2");
}

TEST(FiniteOracle, ClassifyRelationExamples) {
  const FiniteSystem id({0, 1, 2});
  for_each_partition(3, [&](const Partition& p) {
    EXPECT_EQ(classify_relation(id, p), RelationClass::Invariant) << p.str();
    return true;
  });
  EXPECT_EQ(classify_relation(chain(), Partition::diagonal(3)), RelationClass::ForwardInvariantOnly);
  EXPECT_EQ(classify_relation(swap2(), Partition::full(2)), RelationClass::Invariant);
  EXPECT_EQ(classify_relation(FiniteSystem({1, 2, 0}), Partition({0, 0, 1})), RelationClass::NotForwardInvariant);
  EXPECT_THROW(classify_relation(swap2(), Partition::full(3)), tdlab::PreconditionError);
}

TEST(FiniteOracle, IsTdExamples) {
  EXPECT_TRUE(is_td(FiniteSystem({0})).deterministic);
  const auto r = is_td(chain());
  EXPECT_FALSE(r.deterministic);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, Partition::diagonal(3));
  for_each_permutation(6, [](const FiniteSystem& s) {
    EXPECT_TRUE(is_td(s).deterministic);
    return true;
  });
  EXPECT_THROW(is_td(FiniteSystem(std::vector<Point>(9, 0))), tdlab::ResourceCapError);
}

TEST(FiniteOracle, PartitionsComeDiagonalFirst) {
  std::vector<std::string> seen;
  for_each_partition(3, [&](const Partition& p) {
    seen.push_back(p.str());
    return true;
  });
  EXPECT_EQ(seen, (std::vector<std::string>{"{0}{1}{2}", "{0}{1,2}", "{0,2}{1}", "{0,1}{2}", "{0,1,2}"}));
  for (int n = 1; n <= 7; ++n) {
    std::int64_t count = 0;
    for_each_partition(n, [&](const Partition&) { return ++count, true; });
    EXPECT_EQ(count, bell_number(n));
  }
  EXPECT_EQ(bell_number(6), 203);
  EXPECT_EQ(Partition({5, 5, 2}).str(), "{0,1}{2}");
}

TEST(FiniteOracle, OmegaLimitExamples) {
  EXPECT_EQ(omega_limit(chain(), 0), std::vector<Point>{2});
  EXPECT_EQ(omega_limit(swap2(), 0), (std::vector<Point>{0, 1}));
  EXPECT_EQ(omega_limit(FiniteSystem({0, 0}), 0), std::vector<Point>{0});
  EXPECT_THROW(omega_limit(swap2(), 2), tdlab::PreconditionError);
}

TEST(FiniteOracle, NonRecurrentRelationExamples) {
  const auto a = lemma6_relation(chain(), 0);
  EXPECT_EQ(a.orbit_set, (std::vector<Point>{0, 1, 2}));
  EXPECT_EQ(a.relation, Partition::full(3));
  EXPECT_EQ(a.classification, RelationClass::ForwardInvariantOnly);
  const auto b = lemma6_relation(FiniteSystem({1, 1}), 0);
  EXPECT_EQ(b.relation, Partition::full(2));
  EXPECT_EQ(b.classification, RelationClass::ForwardInvariantOnly);
  EXPECT_THROW(lemma6_relation(swap2(), 0), tdlab::PreconditionError);
  const auto c = lemma6_relation(FiniteSystem({1, 2, 2, 3}), 1);
  EXPECT_EQ(c.relation.str(), "{0}{1,2}{3}");
}

TEST(FiniteOracle, PowerAndPairChecksExamples) {
  const FiniteSystem cycle3({1, 2, 0});
  EXPECT_EQ(lemma7_checks(cycle3, 3).verdict, Verdict::Pass);
  EXPECT_EQ(power_system(cycle3, 3), FiniteSystem({0, 1, 2}));
  EXPECT_TRUE(omega_decomposition_holds(cycle3, 0, 3));
  const auto sq = power_system(swap2(), 2);
  EXPECT_EQ(omega_limit(sq, 0), std::vector<Point>{0});
  EXPECT_EQ(omega_limit(sq, swap2()(0)), std::vector<Point>{1});
  EXPECT_TRUE(omega_decomposition_holds(swap2(), 0, 2));
  EXPECT_THROW(lemma7_checks(cycle3, 0), tdlab::PreconditionError);
}

TEST(FiniteOracle, SystemsCompose) {
  const FiniteSystem a({1, 2, 0});
  EXPECT_EQ(power_system(a, 1), a);
  EXPECT_EQ(power_system(a, 0), FiniteSystem({0, 1, 2}));
  const auto p = product_system(a, swap2());
  EXPECT_EQ(p.size(), 6);
  EXPECT_EQ(p(0 * 2 + 1), 1 * 2 + 0);
}

TEST(FiniteOracleProperty, IsTdMatchesBruteForceUpToFourPoints) {
  for (int n = 1; n <= 4; ++n) {
    for_each_map(n, [](const FiniteSystem& s) {
      EXPECT_EQ(is_td(s).deterministic, brute_td(s)) << s.serialize();
      return true;
    });
  }
}

TEST(FiniteOracleProperty, DeterministicExactlyForBijectionsUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    for_each_map(n, [](const FiniteSystem& s) {
      const auto r = is_td(s);
      EXPECT_EQ(r.deterministic, s.is_onto()) << s.serialize();
      if (!s.is_onto()) EXPECT_EQ(r.witness, Partition::diagonal(s.size())) << s.serialize();
      return !::testing::Test::HasFailure();
    });
  }
}

TEST(FiniteOracleProperty, RelationForEveryNonRecurrentPoint) {
  for (int n = 1; n <= 5; ++n) {
    for_each_map(n, [](const FiniteSystem& s) {
      for (Point x = 0; x < s.size(); ++x) {
        if (is_forward_recurrent(s, x)) continue;
        const auto r = lemma6_relation(s, x);
        EXPECT_EQ(r.classification, RelationClass::ForwardInvariantOnly);
        const Pairs img = image(s, pairs(r.relation));
        const Pairs rel = pairs(r.relation);
        EXPECT_TRUE(std::includes(rel.begin(), rel.end(), img.begin(), img.end()));
        EXPECT_NE(img, rel);
      }
      return !::testing::Test::HasFailure();
    });
  }
}

TEST(FiniteOracleProperty, OmegaLimitsAndDecompositionUpToSix) {
  for (int n = 1; n <= 6; ++n) {
    for_each_map(n, [](const FiniteSystem& s) {
      for (Point x = 0; x < s.size(); ++x) {
        EXPECT_EQ(omega_limit(s, x), brute_omega(s, x)) << s.serialize();
        for (int big_n = 1; big_n <= 4; ++big_n) EXPECT_TRUE(omega_decomposition_holds(s, x, big_n));
      }
      return !::testing::Test::HasFailure();
    });
  }
}

TEST(FiniteOracleProperty, PairRecurrenceMatchesJointReturn) {
  for (int n = 1; n <= 4; ++n) {
    for_each_map(n, [n](const FiniteSystem& s) {
      const auto sq = product_system(s, s);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          // Joint return: some t >= 1 with T^t a = a and T^t b = b.
          bool joint = false;
          int pa = a, pb = b;
          for (int t = 1; t <= n * n && !joint; ++t) {
            pa = s(pa);
            pb = s(pb);
            joint = pa == a && pb == b;
          }
          EXPECT_EQ(is_forward_recurrent(sq, a * n + b), joint) << s.serialize();
        }
      }
      return !::testing::Test::HasFailure();
    });
  }
}

TEST(FiniteOracleProperty, PowersOfPermutationsStayDeterministic) {
  for (int n = 1; n <= 6; ++n) {
    for_each_permutation(n, [](const FiniteSystem& s) {
      EXPECT_TRUE(all_pairs_recurrent(s));
      EXPECT_EQ(lemma7_checks(s, 4).verdict, Verdict::Pass) << s.serialize();
      return !::testing::Test::HasFailure();
    });
  }
}

TEST(FiniteOracle, SweepCoversEveryMap) {
  SweepConfig cfg;
  cfg.nmax = 3;
  const auto reports = sweep(cfg);
  ASSERT_EQ(reports.size(), 9u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed()) << r.line();
    EXPECT_EQ(r.field("onto"), "optional");
  }
  EXPECT_EQ(reports.back().line(),
            "CHECK ORACLE_TD PASS n=3 maps=all onto=optional sampling=exhaustive systems=27 deterministic=6");
  cfg.nmax = 9;
  EXPECT_THROW(sweep(cfg), tdlab::ResourceCapError);
}

TEST(FiniteOracle, SweepSamplesAboveBounds) {
  SweepConfig cfg;
  cfg.nmax = 7;
  cfg.samples = 5;
  cfg.seed = 3;
  cfg.power_max = 2;
  const auto a = sweep(cfg);
  const auto b = sweep(cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].line(), b[i].line());
  const auto it = std::find_if(a.begin(), a.end(), [](const auto& r) { return r.field("n") == "7"; });
  ASSERT_NE(it, a.end());
  EXPECT_EQ(it->field("sampling"), "seeded");
  EXPECT_EQ(it->field("systems"), "5");
}
