#include <gtest/gtest.h>

#include <random>

#include "kannan/classifiers.hpp"
#include "kannan/errors.hpp"
#include "kannan/iteration.hpp"
#include "kannan/search.hpp"

namespace kannan {
namespace {

std::vector<Rational> ints(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

FiniteMetricSpace discrete(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return FiniteMetricSpace(m);
}

TEST(PicardTest, SeparationFamilyTrace) {
  const SelfMap e = make_separation_family(4, 10);
  const IterationTrace t = picard(e, 3, 1000);
  EXPECT_EQ(t.points, (std::vector<PointIndex>{3, 0, 1, 2, 2}));
  EXPECT_EQ(t.gaps, ints({10, 1, 1, 0}));
  EXPECT_EQ(t.termination, Termination::kFixedPoint);
  EXPECT_EQ(t.fixed_point, 2u);
  EXPECT_EQ(t.step, 3u);
}

TEST(PicardTest, SwapAndIdentity) {
  const SelfMap swap(discrete(2), {1, 0});
  const IterationTrace s = picard(swap, 0, 100);
  EXPECT_EQ(s.termination, Termination::kCycle);
  EXPECT_EQ(s.prime_period, 2u);
  EXPECT_EQ(s.step, 0u);
  EXPECT_EQ(s.gaps, ints({1, 1}));

  const SelfMap id(discrete(3), {0, 1, 2});
  const IterationTrace i = picard(id, 1, 100);
  EXPECT_EQ(i.termination, Termination::kFixedPoint);
  EXPECT_EQ(i.step, 0u);
  EXPECT_EQ(i.points, (std::vector<PointIndex>{1, 1}));
  EXPECT_EQ(i.gaps, ints({0}));
}

TEST(PicardTest, BudgetAndErrors) {
  const SelfMap e = make_separation_family(4, 10);
  const IterationTrace t = picard(e, 3, 2);
  EXPECT_EQ(t.termination, Termination::kBudgetExhausted);
  EXPECT_EQ(t.points.size(), 3u);
  EXPECT_EQ(t.gaps.size(), 2u);
  EXPECT_THROW(picard(e, 3, 0), ArgumentError);
  EXPECT_THROW(picard(e, 4, 10), ArgumentError);
}

TEST(PicardTest, TraceInvariantsOnRandomMaps) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.size = 2 + seed % 7;
    c.map_scheme = seed % 2 ? MapScheme::kUniform : MapScheme::kFixedPointBiased;
    const SelfMap map = generate(c);
    for (PointIndex s = 0; s < map.size(); ++s) {
      const IterationTrace t = picard(map, s, 1000);
      ASSERT_EQ(t.gaps.size() + 1, t.points.size());
      for (std::size_t k = 0; k + 1 < t.points.size(); ++k) {
        EXPECT_EQ(t.points[k + 1], map(t.points[k]));
        EXPECT_EQ(t.gaps[k], map.space().distance(t.points[k], t.points[k + 1]));
      }
      if (t.termination == Termination::kFixedPoint) {
        EXPECT_EQ(t.gaps.back(), 0);
        EXPECT_EQ(map(t.fixed_point), t.fixed_point);
        EXPECT_EQ(t.points[t.step], t.fixed_point);
      } else {
        ASSERT_EQ(t.termination, Termination::kCycle);
        EXPECT_GE(t.prime_period, 2u);
        EXPECT_EQ(t.points.back(), t.points[t.step]);
        EXPECT_EQ(t.points.size() - 1 - t.step, t.prime_period);
      }
    }
  }
}

TEST(GapConditionTest, Examples) {
  const auto a = gap_condition(ints({10, 1, 1, 0}), 4);
  EXPECT_EQ(a.rho_min, Coefficient(Rational(0)));
  EXPECT_EQ(a.envelope_scale, 10);
  EXPECT_TRUE(a.envelope_ok);

  EXPECT_EQ(gap_condition(ints({1, 1, 1, 1}), 2).rho_min, Coefficient(Rational(1)));
  EXPECT_EQ(gap_condition(ints({8, 4, 2, 1}), 2).rho_min,
            Coefficient(Rational(1, 2)));
  EXPECT_TRUE(gap_condition(ints({0, 0, 3}), 3).rho_min.is_infinite());
  EXPECT_EQ(gap_condition(ints({0, 0, 0}), 3).rho_min, Coefficient(Rational(0)));

  EXPECT_THROW(gap_condition(ints({1, 2}), 3), ArgumentError);
  EXPECT_THROW(gap_condition(ints({1, 2}), 1), ArgumentError);
}

TEST(EnvelopeTest, Examples) {
  const auto bad = envelope_check(ints({1, 1, 1, 1, 1}), 2, Rational(1, 2), 1);
  EXPECT_FALSE(bad.ok);
  EXPECT_EQ(bad.first_violation, std::optional<std::size_t>(1));
  EXPECT_TRUE(envelope_check(ints({8, 4, 2, 1}), 2, Rational(1, 2), 8).ok);
  EXPECT_THROW(envelope_check(ints({8, 4}), 2, Rational(1), 8), DomainError);
  EXPECT_THROW(envelope_check(ints({8, 4}), 2, Rational(-1, 2), 8), DomainError);
}

// Gap sequences built to meet the windowed condition at a random rho: every
// new gap is an arbitrary fraction of rho times the window maximum.
TEST(EnvelopeTest, ConditionImpliesEnvelope) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> num(0, 20);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const Rational rho(num(rng), 21);
    std::vector<Rational> gaps;
    for (std::size_t i = 0; i + 1 < n; ++i) gaps.emplace_back(num(rng) + 1, 7);
    for (std::size_t m = n - 1; m < n + 12; ++m) {
      Rational window = 0;
      for (std::size_t i = m - n + 1; i < m; ++i) window = std::max(window, gaps[i]);
      gaps.push_back(rho * window * Rational(num(rng), 20));
    }
    const GapAnalysis a = gap_condition(gaps, n);
    ASSERT_TRUE(a.rho_min.is_finite());
    EXPECT_LE(a.rho_min.value(), rho);
    EXPECT_TRUE(a.envelope_ok);
    Rational p = 0;
    for (std::size_t i = 0; i + 1 < n; ++i) p = std::max(p, gaps[i]);
    EXPECT_EQ(a.envelope_scale, p);
    EXPECT_TRUE(envelope_check(gaps, n, rho, p).ok);
  }
}

TEST(CauchyTest, SeparationFamily) {
  const SelfMap e = make_separation_family(4, 10);
  const auto cert = cauchy_certificate(picard(e, 3, 1000), 4, Rational(5, 12));
  EXPECT_TRUE(cert.applicable);
  EXPECT_EQ(cert.rho, Rational(15, 31));
  ASSERT_TRUE(cert.gaps.has_value());
  EXPECT_EQ(cert.gaps->rho_min, Coefficient(Rational(0)));
  EXPECT_TRUE(cert.satisfied());
  EXPECT_GT(cert.tail_bound, 0.0);
  EXPECT_THROW(cauchy_certificate(picard(e, 3, 1000), 4, Rational(3, 4)),
               DomainError);
}

TEST(CauchyTest, ShortTraceIsVacuous) {
  const SelfMap constant(discrete(3), {0, 0, 0});
  const auto cert = cauchy_certificate(picard(constant, 2, 10), 3, Rational(0));
  EXPECT_FALSE(cert.applicable);
  EXPECT_TRUE(cert.satisfied());
}

// Members' traces decay at the rate their coefficient predicts.
TEST(CauchyTest, NPointMembersSatisfyCertificate) {
  std::size_t checked = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    GeneratorConfig c;
    c.seed = seed;
    c.size = 3 + seed % 5;
    c.scheme = seed % 2 ? MetricScheme::kClosure : MetricScheme::kRange12;
    c.map_scheme = MapScheme::kFixedPointBiased;
    const SelfMap map = generate(c);
    for (std::size_t n = 2; n <= c.size; ++n) {
      const auto r = npk_min_coefficient(map, n);
      if (!r.member) continue;
      for (PointIndex s = 0; s < map.size(); ++s) {
        const auto cert =
            cauchy_certificate(picard(map, s, 1000), n, r.min_coefficient.value());
        if (cert.applicable) ++checked;
        EXPECT_TRUE(cert.satisfied()) << "seed " << seed << " n " << n;
      }
    }
  }
  EXPECT_GT(checked, 0u);
}

}  // namespace
}  // namespace kannan
