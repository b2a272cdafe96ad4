#include "kannan/iteration.hpp"

#include <algorithm>
#include <cmath>

#include "kannan/classifiers.hpp"
#include "kannan/errors.hpp"

namespace kannan {
namespace {

void require_gaps(std::span<const Rational> gaps, std::size_t n) {
  if (n < 2) throw ArgumentError("gap window needs n >= 2");
  if (gaps.size() < n) {
    throw ArgumentError("gap sequence of length " +
                        std::to_string(gaps.size()) + " is shorter than n = " +
                        std::to_string(n));
  }
}

Rational window_max(std::span<const Rational> gaps, std::size_t m,
                    std::size_t n) {
  Rational best = gaps[m - n + 1];
  for (std::size_t i = m - n + 2; i < m; ++i) {
    if (gaps[i] > best) best = gaps[i];
  }
  return best;
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::kFixedPoint: return "fixed_point";
    case Termination::kCycle: return "cycle";
    case Termination::kBudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

IterationTrace picard(const SelfMap& map, PointIndex start,
                      std::size_t max_steps) {
  if (max_steps == 0) throw ArgumentError("max_steps must be positive");
  if (start >= map.size()) throw ArgumentError("start point out of range");

  constexpr std::size_t kUnseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> first_seen(map.size(), kUnseen);
  IterationTrace trace;
  trace.points.push_back(start);
  first_seen[start] = 0;

  for (std::size_t step = 0; step < max_steps; ++step) {
    const PointIndex current = trace.points.back();
    const PointIndex next = map(current);
    trace.points.push_back(next);
    trace.gaps.push_back(map.space().distance(current, next));
    if (next == current) {
      trace.termination = Termination::kFixedPoint;
      trace.fixed_point = next;
      trace.step = step;
      return trace;
    }
    if (first_seen[next] != kUnseen) {
      trace.termination = Termination::kCycle;
      trace.step = first_seen[next];
      trace.prime_period = step + 1 - first_seen[next];
      return trace;
    }
    first_seen[next] = step + 1;
  }
  trace.termination = Termination::kBudgetExhausted;
  return trace;
}

GapAnalysis gap_condition(std::span<const Rational> gaps, std::size_t n) {
  require_gaps(gaps, n);
  GapAnalysis out;
  out.n = n;
  out.envelope_scale = *std::max_element(gaps.begin(), gaps.begin() + (n - 1));

  for (std::size_t m = n - 1; m < gaps.size(); ++m) {
    Coefficient r = Coefficient::ratio(gaps[m], window_max(gaps, m, n));
    if (!out.binding_index || r > out.rho_min) {
      out.rho_min = std::move(r);
      out.binding_index = m;
    }
    if (out.rho_min.is_infinite()) break;
  }
  if (out.rho_min.less_than(Rational(1))) {
    out.envelope_ok =
        envelope_check(gaps, n, out.rho_min.value(), out.envelope_scale).ok;
  }
  return out;
}

EnvelopeResult envelope_check(std::span<const Rational> gaps, std::size_t n,
                              const Rational& rho, const Rational& scale) {
  require_gaps(gaps, n);
  if (rho < 0 || rho >= 1) {
    throw DomainError("envelope needs 0 <= rho < 1, got " + to_string(rho));
  }
  const unsigned long root = n - 1;
  const Rational scale_pow = pow(scale, root);
  // rho^(m-n+2) is built incrementally; the exponent starts at 1.
  Rational rho_pow = rho;
  for (std::size_t m = n - 1; m < gaps.size(); ++m) {
    if (pow(gaps[m], root) > rho_pow * scale_pow) return {false, m};
    rho_pow *= rho;
  }
  return {};
}

CauchyCertificate cauchy_certificate(const IterationTrace& trace,
                                     std::size_t n, const Rational& lambda) {
  CauchyCertificate cert;
  cert.n = n;
  cert.lambda = lambda;
  cert.rho = coefficient_calculus(lambda, n, CalculusRule::kGapFactor);
  if (trace.gaps.size() < n) return cert;

  cert.applicable = true;
  cert.gaps = gap_condition(trace.gaps, n);
  cert.gap_condition_ok = cert.gaps->rho_min.at_most(cert.rho);
  cert.envelope =
      envelope_check(trace.gaps, n, cert.rho, cert.gaps->envelope_scale);

  const double root = std::pow(approx(cert.rho), 1.0 / static_cast<double>(n - 1));
  cert.tail_bound = approx(cert.gaps->envelope_scale) * root / (1.0 - root);
  return cert;
}

}  // namespace kannan
