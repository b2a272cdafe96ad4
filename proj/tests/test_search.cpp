#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "kannan/classifiers.hpp"
#include "kannan/errors.hpp"
#include "kannan/iteration.hpp"
#include "kannan/search.hpp"

namespace kannan {
namespace {

FiniteMetricSpace discrete(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(1)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 0;
  return FiniteMetricSpace(m);
}

TEST(RngTest, DrawBelowAndDerivedSeeds) {
  Rng rng(1);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = draw_below(rng, 7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
  EXPECT_NE(derive_seed(7, 3), derive_seed(7, 4));
  EXPECT_NE(derive_seed(7, 3), derive_seed(8, 3));
}

TEST(GenerateTest, ValidAndDeterministic) {
  for (MetricScheme scheme : {MetricScheme::kRange12, MetricScheme::kClosure}) {
    for (MapScheme ms : {MapScheme::kUniform, MapScheme::kFixedPointBiased}) {
      for (std::uint64_t seed = 40; seed < 60; ++seed) {
        GeneratorConfig c{seed, 5, scheme, ms};
        const SelfMap a = generate(c);
        EXPECT_TRUE(validate_metric(a.space().matrix()).valid);
        EXPECT_EQ(a, generate(c));
        EXPECT_EQ(a.size(), 5u);
      }
    }
  }
  GeneratorConfig c{42, 5, MetricScheme::kRange12};
  const SelfMap g = generate(c);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      if (i == j) continue;
      EXPECT_GE(g.space().distance(i, j), 1);
      EXPECT_LE(g.space().distance(i, j), 2);
    }
  }
  c.size = 1;
  EXPECT_THROW(generate(c), ArgumentError);
}

TEST(GenerateTest, FamilySchemeMatchesConstructor) {
  GeneratorConfig c;
  c.scheme = MetricScheme::kSeparationFamily;
  c.family_n = 4;
  c.family_m = 10;
  EXPECT_EQ(generate(c), make_separation_family(4, 10));
}

TEST(GenerateTest, SchemeNamesRoundTrip) {
  for (MetricScheme s : {MetricScheme::kRange12, MetricScheme::kClosure,
                         MetricScheme::kSeparationFamily}) {
    EXPECT_EQ(parse_metric_scheme(scheme_name(s)), s);
  }
  for (MapScheme s : {MapScheme::kUniform, MapScheme::kFixedPointBiased}) {
    EXPECT_EQ(parse_map_scheme(scheme_name(s)), s);
  }
  EXPECT_THROW(parse_metric_scheme("bogus"), ArgumentError);
  EXPECT_THROW(parse_map_scheme("bogus"), ArgumentError);
}

TEST(SeparationTest, FamilyWitnesses) {
  const auto w = mine_separation(4, 0, GeneratorConfig{});
  ASSERT_EQ(w.size(), 1u);
  EXPECT_EQ(w[0].map, make_separation_family(4, 20));
  EXPECT_TRUE(w[0].n_point.member);
  EXPECT_FALSE(w[0].fewer_points.member);

  EXPECT_TRUE(mine_separation(3, 0, GeneratorConfig{}, false).empty());
  EXPECT_THROW(mine_separation(2, 0, GeneratorConfig{}), ArgumentError);

  const SelfMap m10 = make_separation_family(4, 10);
  EXPECT_TRUE(npk_min_coefficient(m10, 4).member);
  EXPECT_FALSE(npk_min_coefficient(m10, 3).member);
}

TEST(SeparationTest, MinedWitnessesReverify) {
  GeneratorConfig base;
  base.seed = 11;
  base.size = 5;
  base.map_scheme = MapScheme::kFixedPointBiased;
  for (std::size_t n : {3, 4}) {
    const auto witnesses = mine_separation(n, 150, base);
    for (const auto& w : witnesses) {
      const SelfMap again = generate(w.config);
      if (w.config.scheme != MetricScheme::kSeparationFamily) {
        EXPECT_EQ(again, w.map);
      }
      EXPECT_TRUE(npk_min_coefficient(w.map, n).member);
      EXPECT_FALSE(npk_min_coefficient(w.map, n - 1).member);
    }
    EXPECT_EQ(witnesses.size(), mine_separation(n, 150, base).size());
  }
}

TEST(VerifyTest, SeparationFamilyAllHold) {
  const TheoremReport r = verify_theorems(make_separation_family(4, 10), 4);
  EXPECT_TRUE(r.npk_member);
  EXPECT_TRUE(r.all_hold());
  EXPECT_EQ(r.claims.size(), std::size(kAllClaims));
  EXPECT_TRUE(r.verdict(Claim::kFixedPointExistence).applicable);
  EXPECT_TRUE(r.verdict(Claim::kPrimePeriod).applicable);
  EXPECT_TRUE(r.verdict(Claim::kGapDecay).applicable);
}

TEST(VerifyTest, NonMembersAreVacuous) {
  const TheoremReport swap = verify_theorems(SelfMap(discrete(2), {1, 0}), 2);
  EXPECT_FALSE(swap.npk_member);
  EXPECT_FALSE(swap.verdict(Claim::kFixedPointExistence).applicable);
  EXPECT_FALSE(swap.verdict(Claim::kPrimePeriod).applicable);
  EXPECT_TRUE(swap.all_hold());

  const TheoremReport id = verify_theorems(SelfMap(discrete(4), {0, 1, 2, 3}), 4);
  EXPECT_FALSE(id.npk_member);
  EXPECT_TRUE(id.all_hold());
  EXPECT_THROW(verify_theorems(SelfMap(discrete(3), {0, 1, 2}), 4), ArgumentError);
}

// A 3-point member with two fixed points whose trace reaches one of them
// only at the end; the "before arrival" reading of uniqueness fails here.
TEST(VerifyTest, UniquenessCounterexampleToBeforeArrivalReading) {
  RationalMatrix d = {{0, 1, 10}, {1, 0, 10}, {10, 10, 0}};
  const SelfMap map(FiniteMetricSpace({"a", "b", "c"}, d), {0, 1, 0});
  const auto r = npk_min_coefficient(map, 3);
  EXPECT_EQ(r.min_coefficient, Coefficient(Rational(1, 5)));
  EXPECT_TRUE(r.member);
  EXPECT_FALSE(cycles_summing_to(map, 3).has_value());
  EXPECT_EQ(map.orbits().cycles.size(), 2u);

  const IterationTrace t = picard(map, 2, 10);
  EXPECT_EQ(t.points, (std::vector<PointIndex>{2, 0, 0}));
  EXPECT_EQ(t.fixed_point, 0u);
  EXPECT_EQ(fixed_points(map), (std::vector<PointIndex>{0, 1}));

  const TheoremReport report = verify_theorems(map, 3);
  EXPECT_FALSE(report.verdict(Claim::kUniqueness).applicable);
  EXPECT_TRUE(report.all_hold());
}

TEST(VerifyTest, OrbitSums) {
  // Cycles of length 2 and 1 plus a 3-cycle.
  const SelfMap m(discrete(6), {1, 0, 2, 4, 5, 3});
  EXPECT_EQ(cycles_summing_to(m, 3), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(cycles_summing_to(m, 6), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_FALSE(cycles_summing_to(m, 7).has_value());
}

TEST(CampaignTest, DeterministicAndIndependentOfJobs) {
  CampaignConfig c;
  c.trials = 150;
  const CampaignSummary a = campaign(c);
  c.jobs = 3;
  const CampaignSummary b = campaign(c);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(a.npk_members, b.npk_members);
  EXPECT_EQ(a.instances_by_scheme, b.instances_by_scheme);
  for (Claim claim : kAllClaims) {
    EXPECT_EQ(a.tallies.at(claim).applicable, b.tallies.at(claim).applicable);
    EXPECT_EQ(a.tallies.at(claim).held, b.tallies.at(claim).held);
  }
  EXPECT_GT(a.npk_members, 0u);
}

TEST(CampaignTest, InstancesRespectRanges) {
  CampaignConfig c;
  for (std::size_t i = 0; i < 500; ++i) {
    const auto [config, n] = campaign_instance(c, i);
    EXPECT_GE(config.size, c.size_min);
    EXPECT_LE(config.size, c.size_max);
    EXPECT_GE(n, c.n_min);
    EXPECT_LE(n, std::min(c.n_max, config.size));
  }
  c.trials = 0;
  EXPECT_THROW(campaign(c), ArgumentError);
}

TEST(CampaignTest, ReplayCommandNamesGeneratorFlags) {
  GeneratorConfig c{99, 5, MetricScheme::kClosure, MapScheme::kFixedPointBiased};
  const std::string cmd = replay_command(c, 3);
  for (const char* part : {"verify", "--n 3", "--seed 99", "--size 5",
                           "--scheme closure", "--map-scheme fixed_point_biased"}) {
    EXPECT_NE(cmd.find(part), std::string::npos) << part;
  }
}

}  // namespace
}  // namespace kannan
