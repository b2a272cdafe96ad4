#include "kannan/classifiers.hpp"

#include <algorithm>

#include "kannan/enumeration.hpp"
#include "kannan/errors.hpp"

namespace kannan {
namespace {

void require_arity(const SelfMap& map, std::size_t n) {
  if (n < 2 || n > map.size()) {
    throw ArgumentError("n = " + std::to_string(n) +
                        " outside [2, |X|] with |X| = " +
                        std::to_string(map.size()));
  }
}

ClassificationReport to_report(ContractionClass c, std::size_t n,
                               MaxRatio best) {
  ClassificationReport r;
  r.class_id = c;
  r.n = n;
  r.bound = class_bound(c, n);
  r.member = r.bound && best.value.less_than(*r.bound);
  r.min_coefficient = std::move(best.value);
  r.witness = std::move(best.witness);
  r.witness_lhs = std::move(best.numerator);
  r.witness_rhs = std::move(best.denominator);
  return r;
}

}  // namespace

const char* class_name(ContractionClass c) {
  switch (c) {
    case ContractionClass::kKannan: return "kannan";
    case ContractionClass::kNPointKannan: return "npk";
    case ContractionClass::kTotalPairwise: return "tpd";
    case ContractionClass::kGKannan: return "g_kannan";
    case ContractionClass::kBKannan: return "b_kannan";
  }
  return "unknown";
}

std::optional<Rational> class_bound(ContractionClass c, std::size_t n) {
  switch (c) {
    case ContractionClass::kKannan: return Rational(1, 2);
    case ContractionClass::kNPointKannan:
      return Rational(static_cast<unsigned long>(n - 1),
                      static_cast<unsigned long>(n));
    case ContractionClass::kTotalPairwise: return Rational(1);
    case ContractionClass::kGKannan:
    case ContractionClass::kBKannan: return std::nullopt;
  }
  return std::nullopt;
}

Rational image_spread(const SelfMap& map, std::span<const PointIndex> tuple) {
  const FiniteMetricSpace& space = map.space();
  Rational sum = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      sum += space.distance(map(tuple[i]), map(tuple[j]));
    }
  }
  return sum;
}

Rational displacement_sum(const SelfMap& map,
                          std::span<const PointIndex> tuple) {
  Rational sum = 0;
  for (PointIndex x : tuple) sum += map.displacement(x);
  return sum;
}

ClassificationReport kannan_min_coefficient(const SelfMap& map,
                                            EnumerationOptions opts) {
  if (map.size() < 2) throw ArgumentError("Kannan check needs |X| >= 2");
  const FiniteMetricSpace& space = map.space();
  auto terms = [&](std::span<const PointIndex> pair, Rational& lhs,
                   Rational& rhs) {
    lhs = space.distance(map(pair[0]), map(pair[1]));
    rhs = map.displacement(pair[0]) + map.displacement(pair[1]);
  };
  return to_report(ContractionClass::kKannan, 2,
                   max_ratio_over_subsets(map.size(), 2, terms, opts.jobs));
}

ClassificationReport npk_min_coefficient(const SelfMap& map, std::size_t n,
                                         EnumerationOptions opts) {
  require_arity(map, n);
  auto terms = [&](std::span<const PointIndex> subset, Rational& lhs,
                   Rational& rhs) {
    lhs = image_spread(map, subset);
    rhs = displacement_sum(map, subset);
  };
  return to_report(ContractionClass::kNPointKannan, n,
                   max_ratio_over_subsets(map.size(), n, terms, opts.jobs));
}

ClassificationReport tpd_min_coefficient(const SelfMap& map, std::size_t n,
                                         EnumerationOptions opts) {
  require_arity(map, n);
  const FiniteMetricSpace& space = map.space();
  auto terms = [&](std::span<const PointIndex> subset, Rational& lhs,
                   Rational& rhs) {
    lhs = image_spread(map, subset);
    rhs = total_pairwise_sum(space, subset);
  };
  return to_report(ContractionClass::kTotalPairwise, n,
                   max_ratio_over_subsets(map.size(), n, terms, opts.jobs));
}

GKannanVerdict classify_g_kannan(const SelfMap& map, std::size_t n,
                                 const GFunction& g, GKannanOptions opts) {
  require_arity(map, n);
  auto probe = [&](std::span<const PointIndex> subset)
      -> std::optional<GKannanVerdict> {
    const Rational lhs = image_spread(map, subset);
    PointTuple order(subset.begin(), subset.end());
    std::vector<Rational> args(n);
    do {
      for (std::size_t i = 0; i < n; ++i) args[i] = map.displacement(order[i]);
      Rational rhs = g(std::span<const Rational>(args));
      if (rhs < 0) {
        throw ContractViolation("G returned a negative value " +
                                to_string(rhs));
      }
      if (lhs > rhs) {
        return GKannanVerdict{false, order, lhs, std::move(rhs)};
      }
    } while (!opts.symmetric &&
             std::next_permutation(order.begin(), order.end()));
    return std::nullopt;
  };
  auto hit = first_subset_match<GKannanVerdict>(map.size(), n, probe,
                                                opts.jobs);
  return hit ? std::move(*hit) : GKannanVerdict{};
}

GKannanVerdict classify_b_kannan(const SelfMap& map, std::size_t n,
                                 const std::vector<BetaFunction>& betas,
                                 std::size_t jobs) {
  require_arity(map, n);
  if (betas.size() != n) {
    throw ArgumentError("expected " + std::to_string(n) + " beta functions, got " +
                        std::to_string(betas.size()));
  }
  GFunction g = [&betas](std::span<const Rational> t) {
    Rational sum = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      Rational weight = betas[i](t[i]);
      if (weight < 0) {
        throw ContractViolation("beta_" + std::to_string(i + 1) +
                                " returned a negative value " +
                                to_string(weight));
      }
      sum += weight * t[i];
    }
    return sum;
  };
  return classify_g_kannan(map, n, g, {.symmetric = false, .jobs = jobs});
}

const char* rule_name(CalculusRule rule) {
  switch (rule) {
    case CalculusRule::kKannanToNPoint: return "kannan_to_npk";
    case CalculusRule::kNPointToKannan: return "npk_to_kannan";
    case CalculusRule::kPairwiseToNPoint: return "tpd_to_npk";
    case CalculusRule::kGapFactor: return "rho";
  }
  return "unknown";
}

Rational calculus_domain_bound(std::size_t n, CalculusRule rule) {
  if (n < 2) throw ArgumentError("coefficient calculus needs n >= 2");
  const auto un = static_cast<unsigned long>(n);
  switch (rule) {
    case CalculusRule::kKannanToNPoint: return Rational(1, un);
    case CalculusRule::kNPointToKannan:
    case CalculusRule::kGapFactor: return Rational(un - 1, un);
    case CalculusRule::kPairwiseToNPoint: return Rational(1, un + 1);
  }
  throw ArgumentError("unknown rule");
}

Rational coefficient_calculus(const Rational& value, std::size_t n,
                              CalculusRule rule) {
  const Rational limit = calculus_domain_bound(n, rule);
  if (value < 0 || value >= limit) {
    throw DomainError(std::string(rule_name(rule)) + ": " + to_string(value) +
                      " outside [0, " + to_string(limit) + ")");
  }
  const Rational nn(static_cast<unsigned long>(n));
  Rational out;
  switch (rule) {
    case CalculusRule::kKannanToNPoint: out = value * (nn - 1); break;
    case CalculusRule::kNPointToKannan: out = nn * value / (2 * (nn - 1)); break;
    case CalculusRule::kPairwiseToNPoint:
      out = value * (nn - 1) / (1 - value);
      break;
    case CalculusRule::kGapFactor:
      out = (nn - 1) * value / (nn - 1 - value);
      break;
  }
  out.canonicalize();
  return out;
}

}  // namespace kannan
