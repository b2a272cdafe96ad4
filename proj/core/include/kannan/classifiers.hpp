#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kannan/mappings.hpp"
#include "kannan/rational.hpp"

namespace kannan {

enum class ContractionClass {
  kKannan,         // d(Tx,Ty) <= l (d(x,Tx) + d(y,Ty)), l < 1/2
  kNPointKannan,   // S(Tx_1..Tx_n) <= l sum d(x_i,Tx_i), l < (n-1)/n
  kTotalPairwise,  // S(Tx_1..Tx_n) <= a S(x_1..x_n), a < 1
  kGKannan,
  kBKannan,
};

/// "kannan", "npk", "tpd", "g_kannan", "b_kannan".
const char* class_name(ContractionClass c);

/// Strict upper bound on the coefficient for class membership, when the
/// class has one.
std::optional<Rational> class_bound(ContractionClass c, std::size_t n);

/// Exact minimal coefficient of one contraction class for one map.
///
/// The minimal coefficient is the maximum, over all pairwise-distinct point
/// sets of size n, of left side / right side of the class inequality. A set
/// whose both sides vanish imposes nothing; a set with a positive left side
/// and a zero right side makes the class infeasible (infinite coefficient).
/// Membership is strict: a map whose minimal coefficient equals the bound
/// is not a member.
struct ClassificationReport {
  ContractionClass class_id = ContractionClass::kNPointKannan;
  std::size_t n = 2;
  Coefficient min_coefficient;
  std::optional<Rational> bound;
  bool member = false;
  /// Lexicographically smallest point set attaining the maximum ratio.
  PointTuple witness;
  /// The two sides of the class inequality evaluated at the witness.
  Rational witness_lhs = 0;
  Rational witness_rhs = 0;
};

/// Sides of the n-point Kannan-type inequality for one argument tuple:
/// S(T x_1, ..., T x_n) and sum_i d(x_i, T x_i). Image tuples may repeat
/// points, in which case the repeats contribute zero distance.
Rational image_spread(const SelfMap& map, std::span<const PointIndex> tuple);
Rational displacement_sum(const SelfMap& map,
                          std::span<const PointIndex> tuple);

/// Thread count for the subset enumerations; 1 runs inline.
struct EnumerationOptions {
  std::size_t jobs = 1;
};

/// Requires |X| >= 2.
ClassificationReport kannan_min_coefficient(const SelfMap& map,
                                            EnumerationOptions opts = {});

/// Require 2 <= n <= |X|; throw ArgumentError otherwise.
ClassificationReport npk_min_coefficient(const SelfMap& map, std::size_t n,
                                         EnumerationOptions opts = {});
ClassificationReport tpd_min_coefficient(const SelfMap& map, std::size_t n,
                                         EnumerationOptions opts = {});

/// Generic right-hand side G(t_1, ..., t_n) of the G-Kannan condition, fed
/// the displacements d(x_i, T x_i) in argument order.
///
/// Membership of G in the admissible class (G(0,...,0) = 0 and continuity at
/// the origin) cannot be decided for a black-box function and is the
/// caller's obligation.
using GFunction = std::function<Rational(std::span<const Rational>)>;

/// A weight beta(t); the G-function is then sum_i beta_i(t_i) t_i. Finiteness
/// of limsup beta(t) as t -> 0+ is the caller's obligation.
using BetaFunction = std::function<Rational(const Rational&)>;

struct GKannanOptions {
  /// When true, only the sorted ordering of each subset is tried.
  bool symmetric = false;
  /// Worker threads; G and the betas must be thread safe when != 1.
  std::size_t jobs = 1;
};

struct GKannanVerdict {
  bool holds = true;
  /// First violating argument ordering (subsets in lexicographic order,
  /// orderings in lexicographic order within a subset).
  std::optional<PointTuple> witness;
  Rational lhs = 0;
  Rational rhs = 0;
};

/// Checks S(T x_1..T x_n) <= G(d(x_1,Tx_1), ..., d(x_n,Tx_n)) for every
/// pairwise-distinct n-set and every ordering of it. Throws
/// ContractViolation when G returns a negative value.
GKannanVerdict classify_g_kannan(const SelfMap& map, std::size_t n,
                                 const GFunction& g,
                                 GKannanOptions opts = {});

/// Checks S(T x_1..T x_n) <= sum_i beta_i(d(x_i,Tx_i)) d(x_i,Tx_i) over
/// every n-set and every assignment of its points to the n positions.
/// Throws ArgumentError unless betas.size() == n, ContractViolation on a
/// negative beta value.
GKannanVerdict classify_b_kannan(const SelfMap& map, std::size_t n,
                                 const std::vector<BetaFunction>& betas,
                                 std::size_t jobs = 1);

enum class CalculusRule {
  /// Kannan constant l < 1/n  ->  n-point constant (n-1) l.
  kKannanToNPoint,
  /// n-point constant l < (n-1)/n  ->  Kannan constant n l / (2(n-1)).
  /// Its hypothesis (every point an accumulation point) never holds on a
  /// finite space; offered as arithmetic only.
  kNPointToKannan,
  /// Total-pairwise constant a < 1/(n+1)  ->  n-point constant
  /// a (n-1) / (1-a).
  kPairwiseToNPoint,
  /// n-point constant l < (n-1)/n  ->  gap contraction factor
  /// (n-1) l / (n-1-l) < 1.
  kGapFactor,
};

const char* rule_name(CalculusRule rule);

/// Closed-form coefficient transformation. Throws DomainError when the input
/// is negative or outside the rule's half-open domain, ArgumentError when
/// n < 2.
Rational coefficient_calculus(const Rational& value, std::size_t n,
                              CalculusRule rule);

/// Upper end (exclusive) of a rule's input domain.
Rational calculus_domain_bound(std::size_t n, CalculusRule rule);

}  // namespace kannan
