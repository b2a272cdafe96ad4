#include "kannan/mappings.hpp"

#include <algorithm>

#include "kannan/errors.hpp"

namespace kannan {

OrbitAnalysis analyze_orbits(std::span<const PointIndex> table) {
  const std::size_t n = table.size();
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  OrbitAnalysis out;
  out.tails.resize(n);

  // cycle_of[p] is set for points on a cycle; depth[p] for resolved points.
  std::vector<std::size_t> cycle_of(n, kUnset);
  std::vector<std::size_t> depth(n, kUnset);
  std::vector<std::size_t> visit_mark(n, kUnset);

  for (std::size_t start = 0; start < n; ++start) {
    if (depth[start] != kUnset) continue;
    std::vector<PointIndex> path;
    PointIndex p = start;
    while (depth[p] == kUnset && visit_mark[p] != start) {
      visit_mark[p] = start;
      path.push_back(p);
      p = table[p];
    }
    if (depth[p] == kUnset) {
      // p was revisited within this walk: a new cycle starts at p.
      const auto entry = std::find(path.begin(), path.end(), p);
      Cycle cycle{std::vector<PointIndex>(entry, path.end())};
      std::rotate(cycle.points.begin(),
                  std::min_element(cycle.points.begin(), cycle.points.end()),
                  cycle.points.end());
      const std::size_t id = out.cycles.size();
      for (PointIndex q : cycle.points) {
        cycle_of[q] = id;
        depth[q] = 0;
        out.tails[q] = {0, id};
      }
      if (cycle.points.size() == 1) out.fixed_points.push_back(p);
      out.cycles.push_back(std::move(cycle));
      path.erase(entry, path.end());
    }
    // Everything left on the path is transient and drains into p.
    std::size_t d = depth[p];
    const std::size_t id = out.tails[p].cycle;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      depth[*it] = ++d;
      out.tails[*it] = {d, id};
    }
  }
  std::sort(out.fixed_points.begin(), out.fixed_points.end());
  return out;
}

SelfMap::SelfMap(std::shared_ptr<const FiniteMetricSpace> space,
                 std::vector<PointIndex> table)
    : space_(std::move(space)), table_(std::move(table)) {
  if (!space_) throw ArgumentError("self-map needs a space");
  if (table_.size() != space_->size()) {
    throw ArgumentError("map table has " + std::to_string(table_.size()) +
                        " entries for a space of " +
                        std::to_string(space_->size()) + " points");
  }
  for (PointIndex image : table_) {
    if (image >= space_->size()) {
      throw ArgumentError("map image " + std::to_string(image) +
                          " out of range");
    }
  }
  orbits_ = std::make_shared<const OrbitAnalysis>(analyze_orbits(table_));
}

SelfMap::SelfMap(FiniteMetricSpace space, std::vector<PointIndex> table)
    : SelfMap(std::make_shared<const FiniteMetricSpace>(std::move(space)),
              std::move(table)) {}

bool SelfMap::operator==(const SelfMap& other) const {
  return table_ == other.table_ &&
         (space_ == other.space_ || *space_ == *other.space_);
}

Orbit orbit(const SelfMap& map, PointIndex start) {
  if (start >= map.size()) throw ArgumentError("start point out of range");
  const OrbitAnalysis& a = map.orbits();
  Orbit out;
  PointIndex p = start;
  for (std::size_t k = 0; k < a.tails[start].pre_period; ++k) {
    out.tail.push_back(p);
    p = map(p);
  }
  const std::size_t period = a.cycles[a.tails[start].cycle].prime_period();
  for (std::size_t k = 0; k < period; ++k) {
    out.cycle.push_back(p);
    p = map(p);
  }
  return out;
}

std::vector<PointIndex> fixed_points(const SelfMap& map) {
  return map.orbits().fixed_points;
}

std::map<std::size_t, std::vector<PointIndex>> periodic_points(
    const SelfMap& map) {
  std::map<std::size_t, std::vector<PointIndex>> out;
  for (const Cycle& c : map.orbits().cycles) {
    auto& bucket = out[c.prime_period()];
    bucket.insert(bucket.end(), c.points.begin(), c.points.end());
  }
  for (auto& [period, points] : out) std::sort(points.begin(), points.end());
  return out;
}

bool is_asymptotically_regular(const SelfMap& map) {
  const auto& cycles = map.orbits().cycles;
  return std::all_of(cycles.begin(), cycles.end(),
                     [](const Cycle& c) { return c.prime_period() == 1; });
}

SelfMap make_separation_family(std::size_t n, const Rational& big_distance) {
  if (n < 3) throw ArgumentError("family needs n >= 3");
  if (big_distance <= 1) throw ArgumentError("family needs M > 1");
  RationalMatrix d(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      d[i][j] = std::max(i, j) == n - 1 ? big_distance : Rational(1);
    }
  }
  std::vector<PointIndex> table(n);
  for (std::size_t i = 0; i + 2 < n; ++i) table[i] = i + 1;
  table[n - 2] = n - 2;
  table[n - 1] = 0;
  return SelfMap(FiniteMetricSpace(std::move(d)), std::move(table));
}

}  // namespace kannan
