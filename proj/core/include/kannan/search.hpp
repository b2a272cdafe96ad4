#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kannan/classifiers.hpp"
#include "kannan/mappings.hpp"

namespace kannan {

enum class MetricScheme {
  /// Off-diagonal distances uniform over {1, 1 + 1/q, ..., 2}; the triangle
  /// inequality holds automatically since max <= 2 min.
  kRange12,
  /// Random positive matrix with entries in (0, 4] repaired by
  /// metric_closure.
  kClosure,
  /// The deterministic two-scale family E(n, M).
  kSeparationFamily,
};

enum class MapScheme {
  kUniform,
  /// Each point is fixed with probability 1/2, else mapped uniformly.
  kFixedPointBiased,
};

const char* scheme_name(MetricScheme s);
const char* scheme_name(MapScheme s);
/// Inverse of scheme_name; throw ArgumentError on unknown names.
MetricScheme parse_metric_scheme(const std::string& name);
MapScheme parse_map_scheme(const std::string& name);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t size = 4;
  MetricScheme scheme = MetricScheme::kRange12;
  MapScheme map_scheme = MapScheme::kUniform;
  /// Common denominator of random distances.
  std::uint64_t denominator = 840;
  /// kSeparationFamily parameters; `size` is ignored for that scheme.
  std::size_t family_n = 4;
  Rational family_m = 10;

  bool operator==(const GeneratorConfig&) const = default;
};

/// Seeded 64-bit engine used everywhere in the search module.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection; portable across standard
/// libraries, unlike std::uniform_int_distribution.
std::uint64_t draw_below(Rng& rng, std::uint64_t bound);

/// Deterministic sub-seed for task `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Deterministic in the config. Throws ArgumentError when size < 2 (or the
/// family parameters are invalid).
SelfMap generate(const GeneratorConfig& config);

struct SeparationWitness {
  GeneratorConfig config;
  SelfMap map;
  ClassificationReport n_point;        // member
  ClassificationReport fewer_points;   // (n-1)-point, non-member
};

/// Maps that are n-point Kannan-type members but not (n-1)-point members.
/// For n >= 4 and include_family, E(n, n(n+1)) is tried first; then `budget`
/// random instances drawn from `base` with per-trial derived seeds (size is
/// raised to n when smaller). Throws ArgumentError when n < 3.
std::vector<SeparationWitness> mine_separation(std::size_t n,
                                               std::size_t budget,
                                               const GeneratorConfig& base,
                                               bool include_family = true);

enum class Claim {
  /// n-point member without prime periods 2..n-1 => 1..n-1 fixed points.
  kFixedPointExistence,
  /// n-point member => some prime period in 1..n-1.
  kPrimePeriod,
  /// n-point member => no disjoint cycles whose lengths sum to n.
  kOrbitSum,
  /// Uniqueness of a fixed point that is the limit of a trace avoiding it.
  kUniqueness,
  /// Asymptotically regular with n-point coefficient < 1 => 1..n-1 fixed
  /// points.
  kAsymptoticRegularity,
  /// Kannan constant l < 1/n => n-point coefficient <= (n-1) l.
  kKannanToNPoint,
  /// Total-pairwise constant a < 1/(n+1) => n-point coefficient
  /// <= a (n-1) / (1-a).
  kPairwiseToNPoint,
  /// n-point member with coefficient l => every Picard trace meets the gap
  /// condition with factor (n-1) l / (n-1-l) and its envelope.
  kGapDecay,
};

inline constexpr Claim kAllClaims[] = {
    Claim::kFixedPointExistence, Claim::kPrimePeriod,
    Claim::kOrbitSum,            Claim::kUniqueness,
    Claim::kAsymptoticRegularity, Claim::kKannanToNPoint,
    Claim::kPairwiseToNPoint,    Claim::kGapDecay,
};

const char* claim_name(Claim c);

struct ClaimVerdict {
  Claim claim;
  /// Whether the claim's hypothesis holds for this instance; a claim whose
  /// hypothesis fails holds vacuously.
  bool applicable = false;
  bool holds = true;
  std::string detail;
};

struct TheoremReport {
  std::size_t n = 2;
  bool npk_member = false;
  std::vector<ClaimVerdict> claims;

  bool all_hold() const;
  const ClaimVerdict& verdict(Claim c) const;
};

/// Evaluates every claim on one instance. Throws ArgumentError unless
/// 2 <= n <= |X|.
TheoremReport verify_theorems(const SelfMap& map, std::size_t n);

/// Disjoint cycles of the map whose lengths sum to exactly `total`
/// (smallest cycle indices first), if any.
std::optional<std::vector<std::size_t>> cycles_summing_to(const SelfMap& map,
                                                          std::size_t total);

struct CampaignConfig {
  std::size_t trials = 1000;
  std::size_t size_min = 3;
  std::size_t size_max = 7;
  std::size_t n_min = 2;
  std::size_t n_max = 5;
  std::uint64_t seed = 7;
  std::size_t jobs = 1;
};

struct ClaimTally {
  std::size_t applicable = 0;
  std::size_t held = 0;
  std::size_t failed = 0;
};

struct CampaignFailure {
  std::size_t trial = 0;
  Claim claim;
  GeneratorConfig config;
  std::size_t n = 2;
  std::string detail;
  /// kannan-lab command line that rebuilds and re-verifies the instance.
  std::string replay;
};

struct CampaignSummary {
  CampaignConfig config;
  std::size_t npk_members = 0;
  std::map<std::string, std::size_t> instances_by_scheme;
  std::map<Claim, ClaimTally> tallies;
  std::vector<CampaignFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// The instance a campaign builds for trial `index`.
std::pair<GeneratorConfig, std::size_t> campaign_instance(
    const CampaignConfig& config, std::size_t index);

/// Runs verify_theorems on `trials` generated instances. Both metric schemes
/// and both map schemes are drawn per trial. Results are independent of the
/// job count. Throws ArgumentError on empty ranges or trials == 0.
CampaignSummary campaign(const CampaignConfig& config);

std::string replay_command(const GeneratorConfig& config, std::size_t n);

}  // namespace kannan
