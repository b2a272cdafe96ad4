#include "kannan/search.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "kannan/errors.hpp"
#include "kannan/enumeration.hpp"
#include "kannan/iteration.hpp"

namespace kannan {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::size_t draw_in(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(draw_below(rng, hi - lo + 1));
}

RationalMatrix random_matrix(Rng& rng, std::size_t size, std::uint64_t den,
                             std::uint64_t num_lo, std::uint64_t num_hi) {
  RationalMatrix m(size, std::vector<Rational>(size, Rational(0)));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      const std::uint64_t num = num_lo + draw_below(rng, num_hi - num_lo + 1);
      Rational v(static_cast<unsigned long>(num),
                 static_cast<unsigned long>(den));
      v.canonicalize();
      m[i][j] = v;
      m[j][i] = v;
    }
  }
  return m;
}

std::string join_labels(const SelfMap& map, const std::vector<PointIndex>& pts) {
  std::string out = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += (i ? "," : "") + map.space().label(pts[i]);
  }
  return out + "}";
}

bool has_period_between(const SelfMap& map, std::size_t lo, std::size_t hi) {
  for (const Cycle& c : map.orbits().cycles) {
    if (c.prime_period() >= lo && c.prime_period() <= hi) return true;
  }
  return false;
}

ClaimVerdict fixed_point_count_verdict(Claim claim, const SelfMap& map,
                                       std::size_t n, bool applicable) {
  ClaimVerdict v{claim, applicable, true, {}};
  const auto fixed = fixed_points(map);
  if (applicable) {
    v.holds = !fixed.empty() && fixed.size() <= n - 1;
    v.detail = std::to_string(fixed.size()) + " fixed point(s) " +
               join_labels(map, fixed) + ", limit " + std::to_string(n - 1);
  }
  return v;
}

}  // namespace

const char* scheme_name(MetricScheme s) {
  switch (s) {
    case MetricScheme::kRange12: return "range_1_2";
    case MetricScheme::kClosure: return "closure";
    case MetricScheme::kSeparationFamily: return "separation_family";
  }
  return "unknown";
}

const char* scheme_name(MapScheme s) {
  switch (s) {
    case MapScheme::kUniform: return "uniform";
    case MapScheme::kFixedPointBiased: return "fixed_point_biased";
  }
  return "unknown";
}

MetricScheme parse_metric_scheme(const std::string& name) {
  for (auto s : {MetricScheme::kRange12, MetricScheme::kClosure,
                 MetricScheme::kSeparationFamily}) {
    if (name == scheme_name(s)) return s;
  }
  throw ArgumentError("unknown metric scheme '" + name + "'");
}

MapScheme parse_map_scheme(const std::string& name) {
  for (auto s : {MapScheme::kUniform, MapScheme::kFixedPointBiased}) {
    if (name == scheme_name(s)) return s;
  }
  throw ArgumentError("unknown map scheme '" + name + "'");
}

std::uint64_t draw_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw ArgumentError("draw_below needs a positive bound");
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

SelfMap generate(const GeneratorConfig& config) {
  if (config.scheme == MetricScheme::kSeparationFamily) {
    return make_separation_family(config.family_n, config.family_m);
  }
  if (config.size < 2) throw ArgumentError("generator needs size >= 2");
  if (config.denominator == 0) throw ArgumentError("denominator must be positive");

  Rng rng(config.seed);
  const std::uint64_t q = config.denominator;
  auto space = std::make_shared<const FiniteMetricSpace>(
      config.scheme == MetricScheme::kRange12
          ? FiniteMetricSpace(random_matrix(rng, config.size, q, q, 2 * q))
          : metric_closure(random_matrix(rng, config.size, q, 1, 4 * q)));

  std::vector<PointIndex> table(config.size);
  for (std::size_t i = 0; i < config.size; ++i) {
    if (config.map_scheme == MapScheme::kFixedPointBiased &&
        draw_below(rng, 2) == 0) {
      table[i] = i;
    } else {
      table[i] = draw_below(rng, config.size);
    }
  }
  return SelfMap(std::move(space), std::move(table));
}

std::vector<SeparationWitness> mine_separation(std::size_t n,
                                               std::size_t budget,
                                               const GeneratorConfig& base,
                                               bool include_family) {
  if (n < 3) throw ArgumentError("separation needs n >= 3");
  std::vector<SeparationWitness> out;
  auto consider = [&](const GeneratorConfig& config) {
    SelfMap map = generate(config);
    if (map.size() < n) return;
    ClassificationReport full = npk_min_coefficient(map, n);
    if (!full.member) return;
    ClassificationReport fewer = npk_min_coefficient(map, n - 1);
    if (fewer.member) return;
    out.push_back({config, std::move(map), std::move(full), std::move(fewer)});
  };

  if (include_family && n >= 4) {
    GeneratorConfig family;
    family.scheme = MetricScheme::kSeparationFamily;
    family.family_n = n;
    family.family_m = Rational(static_cast<unsigned long>(n * (n + 1)));
    family.size = n;
    consider(family);
  }
  for (std::size_t trial = 0; trial < budget; ++trial) {
    GeneratorConfig config = base;
    config.seed = derive_seed(base.seed, trial);
    if (config.scheme != MetricScheme::kSeparationFamily) {
      config.size = std::max(config.size, n);
    }
    consider(config);
  }
  return out;
}

const char* claim_name(Claim c) {
  switch (c) {
    case Claim::kFixedPointExistence: return "fixed_point_existence";
    case Claim::kPrimePeriod: return "prime_period";
    case Claim::kOrbitSum: return "orbit_sum_exclusion";
    case Claim::kUniqueness: return "uniqueness";
    case Claim::kAsymptoticRegularity: return "asymptotic_regularity";
    case Claim::kKannanToNPoint: return "kannan_to_npk";
    case Claim::kPairwiseToNPoint: return "tpd_to_npk";
    case Claim::kGapDecay: return "gap_decay";
  }
  return "unknown";
}

bool TheoremReport::all_hold() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const ClaimVerdict& v) { return v.holds; });
}

const ClaimVerdict& TheoremReport::verdict(Claim c) const {
  for (const auto& v : claims) {
    if (v.claim == c) return v;
  }
  throw ArgumentError(std::string("claim not evaluated: ") + claim_name(c));
}

std::optional<std::vector<std::size_t>> cycles_summing_to(const SelfMap& map,
                                                          std::size_t total) {
  const auto& cycles = map.orbits().cycles;
  // reach[s] holds the cycle list of the first subset found with sum s,
  // scanning cycles in index order.
  std::vector<std::optional<std::vector<std::size_t>>> reach(total + 1);
  reach[0] = std::vector<std::size_t>{};
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    const std::size_t len = cycles[c].prime_period();
    if (len > total) continue;
    for (std::size_t s = total; s >= len; --s) {
      if (!reach[s] && reach[s - len]) {
        auto picked = *reach[s - len];
        picked.push_back(c);
        reach[s] = std::move(picked);
      }
      if (s == len) break;
    }
  }
  return reach[total];
}

TheoremReport verify_theorems(const SelfMap& map, std::size_t n) {
  TheoremReport report;
  report.n = n;
  const ClassificationReport npk = npk_min_coefficient(map, n);
  report.npk_member = npk.member;
  const bool short_cycles = has_period_between(map, 2, n - 1);

  report.claims.push_back(fixed_point_count_verdict(
      Claim::kFixedPointExistence, map, n, npk.member && !short_cycles));

  {
    ClaimVerdict v{Claim::kPrimePeriod, npk.member, true, {}};
    if (v.applicable) {
      v.holds = has_period_between(map, 1, n - 1);
      if (!v.holds) v.detail = "no cycle of length 1.." + std::to_string(n - 1);
    }
    report.claims.push_back(std::move(v));
  }

  {
    ClaimVerdict v{Claim::kOrbitSum, npk.member, true, {}};
    if (v.applicable) {
      if (auto picked = cycles_summing_to(map, n)) {
        v.holds = false;
        v.detail = "cycles";
        for (std::size_t c : *picked) {
          v.detail += " " + join_labels(map, map.orbits().cycles[c].points);
        }
        v.detail += " have lengths summing to " + std::to_string(n);
      }
    }
    report.claims.push_back(std::move(v));
  }

  {
    // The hypothesis asks for a Picard sequence converging to a fixed point
    // w with w != x_i for every i >= 0. A convergent sequence in a finite
    // space is eventually constant at its limit, so every trace that reaches
    // w contains w and the hypothesis is never met.
    ClaimVerdict v{Claim::kUniqueness, false, true, {}};
    if (npk.member && !short_cycles) {
      for (PointIndex s = 0; s < map.size() && !v.applicable; ++s) {
        const IterationTrace t = picard(map, s, map.size() + 1);
        if (t.termination != Termination::kFixedPoint) continue;
        const bool avoids_limit =
            std::find(t.points.begin(), t.points.end(), t.fixed_point) ==
            t.points.end();
        if (avoids_limit) {
          v.applicable = true;
          const auto fixed = fixed_points(map);
          v.holds = fixed.size() == 1 && fixed[0] == t.fixed_point;
          v.detail = "fixed points " + join_labels(map, fixed);
        }
      }
    }
    report.claims.push_back(std::move(v));
  }

  report.claims.push_back(fixed_point_count_verdict(
      Claim::kAsymptoticRegularity, map, n,
      is_asymptotically_regular(map) && npk.min_coefficient.less_than(1)));

  {
    const ClassificationReport k = kannan_min_coefficient(map);
    const Rational limit =
        calculus_domain_bound(n, CalculusRule::kKannanToNPoint);
    ClaimVerdict v{Claim::kKannanToNPoint,
                   k.min_coefficient.less_than(limit), true, {}};
    if (v.applicable) {
      const Rational implied = coefficient_calculus(
          k.min_coefficient.value(), n, CalculusRule::kKannanToNPoint);
      v.holds = npk.min_coefficient.at_most(implied);
      v.detail = "npk " + to_string(npk.min_coefficient) + " vs bound " +
                 to_string(implied);
    }
    report.claims.push_back(std::move(v));
  }

  {
    const ClassificationReport t = tpd_min_coefficient(map, n);
    const Rational limit =
        calculus_domain_bound(n, CalculusRule::kPairwiseToNPoint);
    ClaimVerdict v{Claim::kPairwiseToNPoint,
                   t.min_coefficient.less_than(limit), true, {}};
    if (v.applicable) {
      const Rational implied = coefficient_calculus(
          t.min_coefficient.value(), n, CalculusRule::kPairwiseToNPoint);
      v.holds = npk.min_coefficient.at_most(implied);
      v.detail = "npk " + to_string(npk.min_coefficient) + " vs bound " +
                 to_string(implied);
    }
    report.claims.push_back(std::move(v));
  }

  {
    ClaimVerdict v{Claim::kGapDecay, npk.member, true, {}};
    if (v.applicable) {
      const Rational& lambda = npk.min_coefficient.value();
      for (PointIndex s = 0; s < map.size() && v.holds; ++s) {
        const IterationTrace t = picard(map, s, map.size() + 1);
        const CauchyCertificate cert = cauchy_certificate(t, n, lambda);
        if (!cert.satisfied()) {
          v.holds = false;
          v.detail = "trace from " + map.space().label(s) + ": rho_min " +
                     to_string(cert.gaps->rho_min) + " vs rho " +
                     to_string(cert.rho);
        }
      }
    }
    report.claims.push_back(std::move(v));
  }
  return report;
}

std::pair<GeneratorConfig, std::size_t> campaign_instance(
    const CampaignConfig& config, std::size_t index) {
  Rng rng(derive_seed(config.seed, index));
  GeneratorConfig g;
  g.size = draw_in(rng, config.size_min, config.size_max);
  g.size = std::max(g.size, config.n_min);
  const std::size_t n = draw_in(rng, config.n_min, std::min(config.n_max, g.size));
  g.scheme = draw_below(rng, 2) == 0 ? MetricScheme::kRange12
                                     : MetricScheme::kClosure;
  g.map_scheme = draw_below(rng, 2) == 0 ? MapScheme::kUniform
                                         : MapScheme::kFixedPointBiased;
  g.seed = rng();
  return {g, n};
}

std::string replay_command(const GeneratorConfig& config, std::size_t n) {
  std::ostringstream cmd;
  cmd << "kannan-lab verify --n " << n;
  if (config.scheme == MetricScheme::kSeparationFamily) {
    cmd << " --scheme separation_family --family-n " << config.family_n
        << " --family-m " << to_string(config.family_m);
  } else {
    cmd << " --seed " << config.seed << " --size " << config.size
        << " --scheme " << scheme_name(config.scheme) << " --map-scheme "
        << scheme_name(config.map_scheme) << " --denominator "
        << config.denominator;
  }
  return cmd.str();
}

CampaignSummary campaign(const CampaignConfig& config) {
  if (config.trials == 0) throw ArgumentError("campaign needs trials >= 1");
  if (config.size_min > config.size_max || config.n_min > config.n_max ||
      config.n_min < 2 || config.size_min < 2) {
    throw ArgumentError("campaign ranges are empty or below 2");
  }
  if (config.n_min > config.size_max) {
    throw ArgumentError("campaign n range exceeds every size");
  }

  struct Outcome {
    GeneratorConfig instance;
    TheoremReport report;
  };
  std::vector<Outcome> outcomes(config.trials);
  parallel_for(config.trials, config.jobs, [&](std::size_t i) {
    auto [instance, n] = campaign_instance(config, i);
    outcomes[i] = {instance, verify_theorems(generate(instance), n)};
  });

  CampaignSummary summary;
  summary.config = config;
  for (Claim c : kAllClaims) summary.tallies[c] = {};
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& [instance, report] = outcomes[i];
    summary.npk_members += report.npk_member ? 1 : 0;
    ++summary.instances_by_scheme[std::string(scheme_name(instance.scheme)) +
                                  "/" + scheme_name(instance.map_scheme)];
    for (const ClaimVerdict& v : report.claims) {
      ClaimTally& tally = summary.tallies[v.claim];
      if (v.applicable) ++tally.applicable;
      if (v.holds) {
        if (v.applicable) ++tally.held;
      } else {
        ++tally.failed;
        summary.failures.push_back({i, v.claim, instance, report.n, v.detail,
                                    replay_command(instance, report.n)});
      }
    }
  }
  return summary;
}

}  // namespace kannan
