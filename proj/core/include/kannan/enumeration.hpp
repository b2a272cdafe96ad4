#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "kannan/metric_space.hpp"
#include "kannan/rational.hpp"

namespace kannan {

/// C(n, k); saturates at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Worker count for a request of `jobs`; 0 means "all hardware threads".
std::size_t resolve_jobs(std::size_t jobs);

/// Runs body(i) for every i in [0, count) on up to `jobs` threads. Each index
/// is executed exactly once; order across threads is unspecified.
void parallel_for(std::size_t count, std::size_t jobs,
                  const std::function<void(std::size_t)>& body);

/// Visits, in lexicographic order, every k-subset of {0..size-1} whose
/// smallest element is `lead`. The visitor returns false to stop early.
/// Returns false iff the visitor stopped.
template <typename Visitor>
bool for_each_subset_with_lead(std::size_t size, std::size_t k,
                               std::size_t lead, Visitor&& visit) {
  if (k == 0 || lead + k > size) return true;
  std::vector<PointIndex> subset(k);
  for (std::size_t i = 0; i < k; ++i) subset[i] = lead + i;
  while (true) {
    if (!visit(std::span<const PointIndex>(subset))) return false;
    // Advance positions 1..k-1; position 0 stays pinned to `lead`.
    std::size_t i = k;
    while (i > 1 && subset[i - 1] == size - k + (i - 1)) --i;
    if (i == 1) return true;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }
}

/// Visits every k-subset of {0..size-1} in lexicographic order.
template <typename Visitor>
void for_each_subset(std::size_t size, std::size_t k, Visitor&& visit) {
  for (std::size_t lead = 0; lead + k <= size; ++lead) {
    if (!for_each_subset_with_lead(size, k, lead, visit)) return;
  }
}

struct MaxRatio {
  Coefficient value;
  PointTuple witness;
  Rational numerator = 0;
  Rational denominator = 0;
};

/// Maximum of numerator/denominator over all k-subsets, with 0/0 read as 0
/// and positive/0 as infinite. `terms(subset, num, den)` fills the two sides
/// and must be safe to call concurrently when jobs != 1.
///
/// Work is split by the subset's smallest element; each slice keeps its
/// first maximum in lexicographic order and slices are merged in order, so
/// the witness is the lexicographically smallest argmax for any job count.
/// An infinite ratio ends the search.
template <typename Terms>
MaxRatio max_ratio_over_subsets(std::size_t size, std::size_t k,
                                Terms&& terms, std::size_t jobs = 1) {
  const std::size_t slices = size >= k ? size - k + 1 : 0;
  std::vector<std::optional<MaxRatio>> best(slices);
  std::atomic<std::size_t> first_infinite{
      std::numeric_limits<std::size_t>::max()};

  parallel_for(slices, jobs, [&](std::size_t lead) {
    if (lead > first_infinite.load(std::memory_order_relaxed)) return;
    std::optional<MaxRatio> local;
    Rational num;
    Rational den;
    for_each_subset_with_lead(
        size, k, lead, [&](std::span<const PointIndex> subset) {
          terms(subset, num, den);
          Coefficient r = Coefficient::ratio(num, den);
          if (!local || r > local->value) {
            local = MaxRatio{std::move(r),
                             PointTuple(subset.begin(), subset.end()), num,
                             den};
          }
          if (local->value.is_infinite()) {
            std::size_t seen = first_infinite.load();
            while (lead < seen &&
                   !first_infinite.compare_exchange_weak(seen, lead)) {
            }
            return false;
          }
          return true;
        });
    best[lead] = std::move(local);
  });

  MaxRatio out;
  bool have = false;
  for (auto& slice : best) {
    if (!slice) continue;
    if (!have || slice->value > out.value) {
      out = std::move(*slice);
      have = true;
    }
    if (out.value.is_infinite()) break;
  }
  return out;
}

/// First k-subset (lexicographic) for which probe returns a value, across
/// any job count. probe must be safe to call concurrently when jobs != 1.
template <typename Result, typename Probe>
std::optional<Result> first_subset_match(std::size_t size, std::size_t k,
                                         Probe&& probe,
                                         std::size_t jobs = 1) {
  const std::size_t slices = size >= k ? size - k + 1 : 0;
  std::vector<std::optional<Result>> found(slices);
  std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
  parallel_for(slices, jobs, [&](std::size_t lead) {
    if (lead > first_hit.load(std::memory_order_relaxed)) return;
    for_each_subset_with_lead(size, k, lead,
                              [&](std::span<const PointIndex> subset) {
                                found[lead] = probe(subset);
                                return !found[lead].has_value();
                              });
    if (found[lead]) {
      std::size_t seen = first_hit.load();
      while (lead < seen && !first_hit.compare_exchange_weak(seen, lead)) {
      }
    }
  });
  for (auto& f : found) {
    if (f) return std::move(f);
  }
  return std::nullopt;
}

}  // namespace kannan
