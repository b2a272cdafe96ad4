#pragma once

#include <map>
#include <memory>
#include <vector>

#include "kannan/metric_space.hpp"

namespace kannan {

struct Cycle {
  /// Points in orbit order, starting from the smallest index on the cycle.
  std::vector<PointIndex> points;
  std::size_t prime_period() const { return points.size(); }
};

struct TailInfo {
  /// Number of steps before the orbit first lands on its cycle.
  std::size_t pre_period = 0;
  /// Index into OrbitAnalysis::cycles.
  std::size_t cycle = 0;
};

/// Functional-graph structure of a self-map: every orbit is a (possibly
/// empty) tail followed by exactly one cycle.
struct OrbitAnalysis {
  std::vector<PointIndex> fixed_points;
  std::vector<Cycle> cycles;
  std::vector<TailInfo> tails;  // one per point
};

/// A total self-map T: X -> X on a finite metric space.
///
/// Finite spaces carry the discrete topology, so every self-map is continuous
/// and the continuity hypotheses of the asymptotic-regularity results hold
/// automatically. Orbit structure is computed once at construction.
class SelfMap {
 public:
  /// Throws ArgumentError when the table size differs from the space size or
  /// an image is out of range.
  SelfMap(std::shared_ptr<const FiniteMetricSpace> space,
          std::vector<PointIndex> table);
  SelfMap(FiniteMetricSpace space, std::vector<PointIndex> table);

  const FiniteMetricSpace& space() const { return *space_; }
  const std::shared_ptr<const FiniteMetricSpace>& space_ptr() const {
    return space_;
  }
  const std::vector<PointIndex>& table() const { return table_; }
  std::size_t size() const { return table_.size(); }

  PointIndex operator()(PointIndex x) const { return table_[x]; }

  /// d(x, Tx).
  const Rational& displacement(PointIndex x) const {
    return space_->distance(x, table_[x]);
  }

  const OrbitAnalysis& orbits() const { return *orbits_; }

  /// Same table over an equal space.
  bool operator==(const SelfMap& other) const;

 private:
  std::shared_ptr<const FiniteMetricSpace> space_;
  std::vector<PointIndex> table_;
  std::shared_ptr<const OrbitAnalysis> orbits_;
};

OrbitAnalysis analyze_orbits(std::span<const PointIndex> table);

struct Orbit {
  std::vector<PointIndex> tail;
  std::vector<PointIndex> cycle;
};

/// Maximal non-repeating prefix of (start, T start, ...), split into the
/// transient part and the cycle it enters.
Orbit orbit(const SelfMap& map, PointIndex start);

std::vector<PointIndex> fixed_points(const SelfMap& map);

/// Prime period -> points lying on cycles of that length.
std::map<std::size_t, std::vector<PointIndex>> periodic_points(
    const SelfMap& map);

/// On a finite space d(T^m x, T^{m+1} x) -> 0 for every x exactly when every
/// cycle is a fixed point.
bool is_asymptotically_regular(const SelfMap& map);

/// The two-scale ultrametric family E(n, M): d = 1 among x1..x{n-1}, d = M
/// to x_n; the map shifts x_i -> x_{i+1} for i <= n-2, fixes x_{n-1} and
/// sends x_n -> x_1. It is an n-point Kannan-type map for large M but never
/// an (n-1)-point one when n >= 4.
/// Throws ArgumentError unless n >= 3 and M > 1.
SelfMap make_separation_family(std::size_t n, const Rational& big_distance);

}  // namespace kannan
