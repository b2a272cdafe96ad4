#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "kannan/rational.hpp"

namespace kannan {

using PointIndex = std::size_t;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// An ordered list of point indices. Distinctness is the caller's business:
/// the argument tuples of the class definitions are pairwise distinct, their
/// image tuples may repeat points.
using PointTuple = std::vector<PointIndex>;

enum class Axiom {
  kNegativeDistance,
  kNonzeroDiagonal,
  kZeroOffDiagonal,
  kAsymmetry,
  kTriangle,
};

const char* axiom_name(Axiom axiom);

struct Violation {
  Axiom axiom;
  /// (i, i) for diagonal, (i, j) for pair axioms, and (i, j, k) for a
  /// triangle failure d(i, k) > d(i, j) + d(j, k).
  std::vector<PointIndex> witness;
};

struct ValidationReport {
  bool valid = true;
  std::vector<Violation> violations;
};

/// Reports every metric-axiom violation of a square matrix.
/// Throws StructuralError when the matrix is not square.
ValidationReport validate_metric(const RationalMatrix& matrix);

/// A labelled finite point set with an exact distance matrix. Construction
/// validates the metric axioms, so every instance is a metric space.
class FiniteMetricSpace {
 public:
  /// Throws StructuralError on size mismatch, duplicate labels or any axiom
  /// violation.
  FiniteMetricSpace(std::vector<std::string> labels, RationalMatrix dist);

  /// Labels default to "x1", "x2", ...
  explicit FiniteMetricSpace(const RationalMatrix& dist);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(PointIndex i) const { return labels_.at(i); }
  const RationalMatrix& matrix() const { return dist_; }

  const Rational& distance(PointIndex i, PointIndex j) const {
    return dist_[i][j];
  }

  /// Index of a label; throws ArgumentError when absent.
  PointIndex index_of(const std::string& label) const;

  bool operator==(const FiniteMetricSpace& other) const = default;

 private:
  std::vector<std::string> labels_;
  RationalMatrix dist_;
};

std::vector<std::string> default_labels(std::size_t count);

bool is_ultrametric(const FiniteMetricSpace& space);

/// Sum of d(t_i, t_j) over all i < j, with the tuple read as a multiset:
/// repeated points contribute zero. Throws ArgumentError for fewer than two
/// entries or an out-of-range index.
Rational total_pairwise_sum(const FiniteMetricSpace& space,
                            std::span<const PointIndex> tuple);

/// All-pairs shortest-path closure. Input must be square, symmetric, with a
/// zero diagonal and positive off-diagonal entries; a zero off-diagonal entry
/// would merge two points and is rejected with StructuralError.
FiniteMetricSpace metric_closure(const RationalMatrix& raw);
FiniteMetricSpace metric_closure(std::vector<std::string> labels,
                                 const RationalMatrix& raw);

}  // namespace kannan
