#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "kannan/errors.hpp"
#include "kannan/mappings.hpp"
#include "kannan/metric_space.hpp"

namespace kannan {
namespace {

RationalMatrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
  RationalMatrix m;
  for (auto r : rows) {
    std::vector<Rational> row;
    for (int v : r) row.emplace_back(v);
    m.push_back(std::move(row));
  }
  return m;
}

RationalMatrix equilateral(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return m;
}

// Random symmetric matrix with zero diagonal and entries k/den, k in [lo, hi].
RationalMatrix random_raw(std::mt19937& rng, std::size_t n, int lo, int hi,
                          int den) {
  std::uniform_int_distribution<int> pick(lo, hi);
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      Rational v(pick(rng), den);
      v.canonicalize();
      m[i][j] = m[j][i] = v;
    }
  }
  return m;
}

TEST(ValidateMetricTest, SeparationFamilyPassesEveryTriple) {
  const SelfMap e = make_separation_family(4, 10);
  const auto& d = e.space().matrix();
  // Independent check of all 4^3 ordered triples.
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LE(d[i][k], d[i][j] + d[j][k]);
      }
    }
  }
  EXPECT_TRUE(validate_metric(d).valid);
}

TEST(ValidateMetricTest, ReportsTriangleWitness) {
  const auto m = from_ints({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}});
  const ValidationReport r = validate_metric(m);
  ASSERT_FALSE(r.valid);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].axiom, Axiom::kTriangle);
  // d(1,2) = 5 > d(1,3) + d(3,2) = 2, written (1,3,2) with 1-based labels.
  EXPECT_EQ(r.violations[0].witness, (std::vector<PointIndex>{0, 2, 1}));
}

TEST(ValidateMetricTest, ReportsZeroOffDiagonal) {
  const auto m = from_ints({{0, 0, 1}, {0, 0, 1}, {1, 1, 0}});
  const ValidationReport r = validate_metric(m);
  ASSERT_FALSE(r.valid);
  EXPECT_EQ(r.violations[0].axiom, Axiom::kZeroOffDiagonal);
  EXPECT_EQ(r.violations[0].witness, (std::vector<PointIndex>{0, 1}));
}

TEST(ValidateMetricTest, ReportsDiagonalAsymmetryAndNegatives) {
  const auto m = from_ints({{1, 2}, {3, 0}});
  const ValidationReport r = validate_metric(m);
  std::vector<Axiom> axioms;
  for (const auto& v : r.violations) axioms.push_back(v.axiom);
  EXPECT_NE(std::find(axioms.begin(), axioms.end(), Axiom::kNonzeroDiagonal),
            axioms.end());
  EXPECT_NE(std::find(axioms.begin(), axioms.end(), Axiom::kAsymmetry),
            axioms.end());
  EXPECT_FALSE(validate_metric(from_ints({{0, -1}, {-1, 0}})).valid);
}

TEST(ValidateMetricTest, NonSquareIsStructuralError) {
  RationalMatrix m{{0, 1}, {1}};
  EXPECT_THROW(validate_metric(m), StructuralError);
}

TEST(FiniteMetricSpaceTest, ConstructorRejectsBadInput) {
  EXPECT_THROW(FiniteMetricSpace(from_ints({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}})),
               StructuralError);
  EXPECT_THROW(FiniteMetricSpace({"a", "a"}, from_ints({{0, 1}, {1, 0}})),
               StructuralError);
  EXPECT_THROW(FiniteMetricSpace({"a"}, from_ints({{0, 1}, {1, 0}})),
               StructuralError);
  const FiniteMetricSpace s({"p", "q"}, from_ints({{0, 1}, {1, 0}}));
  EXPECT_EQ(s.index_of("q"), 1u);
  EXPECT_THROW(s.index_of("r"), ArgumentError);
}

TEST(UltrametricTest, Examples) {
  for (std::size_t n : {3, 4, 5, 7}) {
    for (const Rational& m : {Rational(3, 2), Rational(10), Rational(56)}) {
      EXPECT_TRUE(is_ultrametric(make_separation_family(n, m).space()));
    }
  }
  EXPECT_TRUE(is_ultrametric(FiniteMetricSpace(equilateral(5))));
  EXPECT_FALSE(
      is_ultrametric(FiniteMetricSpace(from_ints({{0, 1, 3}, {1, 0, 2}, {3, 2, 0}}))));
}

TEST(TotalPairwiseSumTest, Examples) {
  const FiniteMetricSpace tri(equilateral(3));
  EXPECT_EQ(total_pairwise_sum(tri, PointTuple{0, 1, 2}), 3);

  const SelfMap e = make_separation_family(4, 10);
  EXPECT_EQ(total_pairwise_sum(e.space(), PointTuple{0, 1, 2, 3}), 33);
  // Image tuple (x2, x3, x3, x1) of the family map.
  EXPECT_EQ(total_pairwise_sum(e.space(), PointTuple{1, 2, 2, 0}), 5);
  EXPECT_EQ(total_pairwise_sum(e.space(), PointTuple{1, 2, 2, 0}),
            4 * 3 / 2 - 1);
}

TEST(TotalPairwiseSumTest, Errors) {
  const FiniteMetricSpace tri(equilateral(3));
  EXPECT_THROW(total_pairwise_sum(tri, PointTuple{0}), ArgumentError);
  EXPECT_THROW(total_pairwise_sum(tri, PointTuple{0, 3}), ArgumentError);
}

TEST(TotalPairwiseSumTest, PermutationInvariantAndZeroOnlyOnCoincidence) {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 3 + trial % 4;
    const FiniteMetricSpace space(random_raw(rng, n, 840, 1680, 840));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    PointTuple t(2 + trial % 5);
    for (auto& p : t) p = pick(rng);
    const Rational base = total_pairwise_sum(space, t);
    PointTuple shuffled = t;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(total_pairwise_sum(space, shuffled), base);
    const bool all_same =
        std::all_of(t.begin(), t.end(), [&](PointIndex p) { return p == t[0]; });
    EXPECT_GE(base, 0);
    EXPECT_EQ(base == 0, all_same);
  }
}

TEST(MetricClosureTest, Examples) {
  const auto metric = from_ints({{0, 2, 3}, {2, 0, 4}, {3, 4, 0}});
  EXPECT_EQ(metric_closure(metric).matrix(), metric);

  const auto repaired = metric_closure(from_ints({{0, 5, 1}, {5, 0, 1}, {1, 1, 0}}));
  EXPECT_EQ(repaired.distance(0, 1), 2);
  EXPECT_EQ(repaired.distance(1, 0), 2);
  EXPECT_EQ(repaired.distance(0, 2), 1);

  std::mt19937 rng(99);
  const auto in_range = random_raw(rng, 6, 840, 1680, 840);
  EXPECT_EQ(metric_closure(in_range).matrix(), in_range);
}

TEST(MetricClosureTest, RejectsZeroOffDiagonalAndAsymmetry) {
  EXPECT_THROW(metric_closure(from_ints({{0, 0}, {0, 0}})), StructuralError);
  EXPECT_THROW(metric_closure(from_ints({{0, 1}, {2, 0}})), StructuralError);
  EXPECT_THROW(metric_closure(from_ints({{1, 1}, {1, 0}})), StructuralError);
}

TEST(MetricClosureTest, IdempotentAndNonIncreasing) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto raw = random_raw(rng, n, 1, 4 * 840, 840);
    const FiniteMetricSpace once = metric_closure(raw);
    EXPECT_TRUE(validate_metric(once.matrix()).valid);
    EXPECT_EQ(metric_closure(once.matrix()).matrix(), once.matrix());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) EXPECT_LE(once.distance(i, j), raw[i][j]);
    }
  }
}

TEST(SeparationFamilyTest, Construction) {
  const SelfMap e = make_separation_family(4, 10);
  EXPECT_EQ(e.table(), (std::vector<PointIndex>{1, 2, 2, 0}));
  std::vector<Rational> upper;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) upper.push_back(e.space().distance(i, j));
  }
  std::sort(upper.begin(), upper.end());
  EXPECT_EQ(upper, (std::vector<Rational>{1, 1, 1, 10, 10, 10}));

  const SelfMap small = make_separation_family(3, 2);
  EXPECT_TRUE(validate_metric(small.space().matrix()).valid);
  EXPECT_TRUE(is_ultrametric(small.space()));

  for (std::size_t n = 3; n <= 8; ++n) {
    EXPECT_EQ(fixed_points(make_separation_family(n, 5)),
              (std::vector<PointIndex>{n - 2}));
  }
  EXPECT_THROW(make_separation_family(2, 10), ArgumentError);
  EXPECT_THROW(make_separation_family(4, 1), ArgumentError);
}

}  // namespace
}  // namespace kannan
