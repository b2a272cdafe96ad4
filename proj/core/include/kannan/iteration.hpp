#pragma once

#include <optional>
#include <span>
#include <vector>

#include "kannan/mappings.hpp"
#include "kannan/rational.hpp"

namespace kannan {

enum class Termination { kFixedPoint, kCycle, kBudgetExhausted };

const char* termination_name(Termination t);

/// A Picard trace x_0, x_1 = T x_0, ... with its gap sequence
/// p_m = d(x_m, x_{m+1}).
///
/// Iteration stops at the first revisit of a point, which is recorded as the
/// last entry of `points`; hence x_0 .. x_{K} are pairwise distinct and
/// x_{K+1} repeats one of them.
struct IterationTrace {
  std::vector<PointIndex> points;
  std::vector<Rational> gaps;
  Termination termination = Termination::kBudgetExhausted;
  /// kFixedPoint: the fixed point. Unused otherwise.
  PointIndex fixed_point = 0;
  /// kFixedPoint: first step at which x_step is the fixed point.
  /// kCycle: first step at which the trace is on the cycle.
  std::size_t step = 0;
  /// kCycle: cycle length (>= 2).
  std::size_t prime_period = 0;
};

/// Throws ArgumentError for max_steps == 0 or an invalid start.
IterationTrace picard(const SelfMap& map, PointIndex start,
                      std::size_t max_steps);

/// Minimal rho with p_m <= rho * max(p_{m-n+1}, ..., p_{m-1}) for every
/// m >= n-1, plus P = max(p_0, ..., p_{n-2}).
struct GapAnalysis {
  std::size_t n = 2;
  /// Infinite when some gap is positive after n-1 zero gaps.
  Coefficient rho_min;
  /// Index m of the binding constraint (unset when there is none).
  std::optional<std::size_t> binding_index;
  Rational envelope_scale = 0;  // P
  /// envelope_check at rho_min, when rho_min < 1.
  bool envelope_ok = false;
};

/// Throws ArgumentError when n < 2 or the sequence has fewer than n gaps.
GapAnalysis gap_condition(std::span<const Rational> gaps, std::size_t n);

struct EnvelopeResult {
  bool ok = true;
  std::optional<std::size_t> first_violation;
};

/// Verifies p_m <= rho^((m-n+2)/(n-1)) * P for all m >= n-1, exactly, by
/// comparing p_m^(n-1) <= rho^(m-n+2) * P^(n-1).
/// Throws DomainError unless 0 <= rho < 1, ArgumentError as gap_condition.
EnvelopeResult envelope_check(std::span<const Rational> gaps, std::size_t n,
                              const Rational& rho, const Rational& scale);

/// Whether a trace's gaps obey the decay predicted for an n-point
/// Kannan-type map with coefficient lambda.
struct CauchyCertificate {
  std::size_t n = 2;
  Rational lambda = 0;
  Rational rho = 0;  // (n-1) lambda / (n-1-lambda)
  /// False when the trace has fewer than n gaps; every check is then vacuous.
  bool applicable = false;
  std::optional<GapAnalysis> gaps;
  bool gap_condition_ok = true;  // rho_min <= rho
  EnvelopeResult envelope;       // at rho and P
  /// Informational bound on d(x_{n-1}, x_{n-1+k}) for every k:
  /// P rho^(1/(n-1)) / (1 - rho^(1/(n-1))). Display only.
  double tail_bound = 0.0;

  bool satisfied() const { return gap_condition_ok && envelope.ok; }
};

/// Throws DomainError unless 0 <= lambda < (n-1)/n.
CauchyCertificate cauchy_certificate(const IterationTrace& trace,
                                     std::size_t n, const Rational& lambda);

}  // namespace kannan
