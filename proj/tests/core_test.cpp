#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "momo/core/archive.hpp"
#include "momo/core/dominance.hpp"
#include "momo/core/random.hpp"

using namespace momo;

namespace {

Solution evaluated(std::vector<double> f, double degree = 0.0, std::vector<double> x = {}) {
  Solution s;
  s.genotype = RealVector{x.empty() ? f : x};
  s.fitness = MOFitness(std::move(f));
  s.constraints = ConstraintRecord::from_degree(degree);
  return s;
}

std::vector<double> random_point(Rng& rng, std::size_t m, int levels = 0) {
  std::vector<double> p(m);
  for (auto& v : p) v = levels > 0 ? static_cast<double>(rng.index(levels)) : rng.uniform();
  return p;
}

// Independent oracle: a is kept iff no b is <= everywhere and < somewhere.
bool brute_dominated(std::vector<double> const& p, std::vector<std::vector<double>> const& set) {
  for (auto const& q : set) {
    bool le = true, lt = false;
    for (std::size_t k = 0; k < p.size(); ++k) {
      le = le && q[k] <= p[k];
      lt = lt || q[k] < p[k];
    }
    if (le && lt) return true;
  }
  return false;
}

} // namespace

TEST(Dominates, Examples) {
  auto const min2 = ObjectiveSense::minimize(2);
  EXPECT_EQ(dominates(std::vector{1.0, 2.0}, std::vector{2.0, 3.0}, min2), Dominance::a_dominates);
  EXPECT_EQ(dominates(std::vector{1.0, 2.0}, std::vector{1.0, 2.0}, min2), Dominance::equal);
  EXPECT_EQ(dominates(std::vector{1.0, 3.0}, std::vector{3.0, 1.0}, min2), Dominance::non_dominated);
}

TEST(Dominates, LengthMismatchIsDimensionError) {
  EXPECT_THROW(dominates(std::vector{1.0, 2.0}, std::vector{1.0, 2.0, 3.0}), DimensionError);
  EXPECT_THROW(ObjectiveSense::minimize(1), DimensionError);
}

TEST(Dominates, AntisymmetryAndTransitivityFuzz) {
  Rng rng(7);
  for (int t = 0; t < 10000; ++t) {
    std::size_t const m = 2 + rng.index(5);
    auto a = random_point(rng, m, 4);
    auto b = random_point(rng, m, 4);
    auto c = random_point(rng, m, 4);
    if (dominates(a, b) == Dominance::a_dominates) {
      EXPECT_EQ(dominates(b, a), Dominance::b_dominates);
    }
    if (dominates(a, b) == Dominance::a_dominates && dominates(b, c) == Dominance::a_dominates) {
      EXPECT_EQ(dominates(a, c), Dominance::a_dominates);
    }
  }
}

TEST(Dominates, MaximizeWithNegationIsInvariant) {
  Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    std::size_t const m = 2 + rng.index(5);
    auto a = random_point(rng, m, 3);
    auto b = random_point(rng, m, 3);
    std::size_t const flip = rng.index(m);
    std::vector<bool> flags(m, false);
    flags[flip] = true;
    auto const base = dominates(a, b, ObjectiveSense::minimize(m));
    a[flip] = -a[flip];
    b[flip] = -b[flip];
    EXPECT_EQ(dominates(a, b, ObjectiveSense(flags)), base);
  }
}

TEST(ConstrainedCompare, Examples) {
  auto const cmp = pareto_comparator(ObjectiveSense::minimize(2));
  EXPECT_EQ(constrained_compare(evaluated({5, 5}), evaluated({1, 1}, 3.0), cmp), Preference::first);
  EXPECT_EQ(constrained_compare(evaluated({5, 5}, 1.0), evaluated({1, 1}, 2.0), cmp), Preference::first);
  EXPECT_EQ(constrained_compare(evaluated({1, 2}), evaluated({2, 3}), cmp), Preference::first);
  EXPECT_EQ(constrained_compare(evaluated({2, 3}), evaluated({1, 2}), cmp), Preference::second);
}

TEST(ConstrainedCompare, UnevaluatedIsStateError) {
  auto const cmp = pareto_comparator(ObjectiveSense::minimize(2));
  Solution raw;
  raw.genotype = RealVector{{0.0}};
  EXPECT_THROW(constrained_compare(raw, evaluated({1, 2}), cmp), StateError);
}

TEST(ConstraintRecord, FeasibleIffZeroDegree) {
  EXPECT_TRUE(ConstraintRecord::from_violations(std::vector{-1.0, 0.0}).feasible());
  auto const r = ConstraintRecord::from_violations(std::vector{-1.0, 2.0, 0.5});
  EXPECT_FALSE(r.feasible());
  EXPECT_DOUBLE_EQ(r.degree_of_infeasibility(), 2.5);
  EXPECT_THROW(ConstraintRecord::from_degree(-1.0), DomainError);
}

TEST(ParetoFilter, Examples) {
  auto const sense = ObjectiveSense::minimize(2);
  Population set{evaluated({1, 1}), evaluated({2, 2}), evaluated({1.5, 0.5})};
  auto out = pareto_filter(set, sense);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].objectives(), (std::vector{1.0, 1.0}));
  EXPECT_EQ(out[1].objectives(), (std::vector{1.5, 0.5}));

  Population single{evaluated({3, 4})};
  EXPECT_EQ(pareto_filter(single, sense).size(), 1u);

  Population three{evaluated({0, 1}), evaluated({1, 0}), evaluated({1, 1})};
  out = pareto_filter(three, sense);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].objectives(), (std::vector{0.0, 1.0}));
  EXPECT_EQ(out[1].objectives(), (std::vector{1.0, 0.0}));

  EXPECT_TRUE(pareto_filter(Population{}, sense).empty());
}

TEST(ParetoFilter, DuplicatesKeptOncePerDecisionVector) {
  auto const sense = ObjectiveSense::minimize(2);
  Population set{evaluated({1, 1}, 0, {0.1}), evaluated({1, 1}, 0, {0.1}), evaluated({1, 1}, 0, {0.2})};
  EXPECT_EQ(pareto_filter(set, sense).size(), 2u);
}

TEST(ParetoFilter, MatchesBruteForceAndIsIdempotent) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    std::size_t const m = 2 + rng.index(4);
    std::size_t const n = 1 + rng.index(200);
    auto const sense = ObjectiveSense::minimize(m);
    Population set;
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(random_point(rng, m, 6));
      set.push_back(evaluated(pts.back(), 0.0, {static_cast<double>(i)}));
    }
    auto const out = pareto_filter(set, sense);
    std::size_t expected = 0;
    for (auto const& p : pts) expected += brute_dominated(p, pts) ? 0 : 1;
    ASSERT_EQ(out.size(), expected);
    for (auto const& s : out) EXPECT_FALSE(brute_dominated(s.objectives(), pts));
    EXPECT_EQ(pareto_filter(out, sense).size(), out.size());
  }
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(distance(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}), 5.0);
  EXPECT_DOUBLE_EQ(distance(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}, Metric::manhattan), 7.0);
  EXPECT_DOUBLE_EQ(distance(std::vector{1.5, 2.5}, std::vector{1.5, 2.5}), 0.0);
  EXPECT_THROW(distance(std::vector{0.0}, std::vector{0.0, 1.0}), DimensionError);
}

TEST(Crowding, CollinearMiddlePoint) {
  std::vector<std::vector<double>> pts{{0, 1}, {0.5, 0.5}, {1, 0}};
  std::vector<std::size_t> front{0, 1, 2};
  auto const d = crowding_distances(pts, front);
  EXPECT_TRUE(std::isinf(d[0]));
  EXPECT_DOUBLE_EQ(d[1], 2.0);
  EXPECT_TRUE(std::isinf(d[2]));
}

TEST(Archive, StaysMutuallyNonDominatedAndBounded) {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    std::size_t const m = 2 + rng.index(3);
    Archive archive(ObjectiveSense::minimize(m), 20);
    for (int i = 0; i < 300; ++i) {
      archive.insert(evaluated(random_point(rng, m, 10)));
      ASSERT_LE(archive.size(), 20u);
    }
    auto const& mem = archive.members();
    for (std::size_t i = 0; i < mem.size(); ++i) {
      for (std::size_t j = 0; j < mem.size(); ++j) {
        if (i == j) continue;
        auto const d = dominates(mem[i].objectives(), mem[j].objectives());
        EXPECT_NE(d, Dominance::a_dominates);
        EXPECT_NE(d, Dominance::equal);
      }
    }
  }
}

TEST(Archive, InfeasibleRejectedOnceFeasibleExists) {
  Archive archive(ObjectiveSense::minimize(2));
  EXPECT_TRUE(archive.insert(evaluated({0, 0}, 2.0)));
  EXPECT_TRUE(archive.insert(evaluated({5, 5})));
  EXPECT_EQ(archive.size(), 1u);
  EXPECT_TRUE(archive.members()[0].constraints.feasible());
  EXPECT_FALSE(archive.insert(evaluated({-1, -1}, 0.5)));
}

TEST(Rng, IndexIsInRangeAndDeterministic) {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    auto const x = a.index(7);
    EXPECT_LT(x, 7u);
    EXPECT_EQ(x, b.index(7));
  }
  for (int i = 0; i < 1000; ++i) {
    double const u = a.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}
