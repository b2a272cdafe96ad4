#include "kannan/metric_space.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kannan/errors.hpp"

namespace kannan {
namespace {

void require_square(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) {
      std::ostringstream msg;
      msg << "matrix is not square: row " << i << " has " << m[i].size()
          << " entries, expected " << m.size();
      throw StructuralError(msg.str());
    }
  }
}

std::string describe(const Violation& v) {
  std::ostringstream out;
  out << axiom_name(v.axiom) << " at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    out << (i ? "," : "") << v.witness[i] + 1;
  }
  out << ")";
  return out.str();
}

}  // namespace

const char* axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::kNegativeDistance: return "negative_distance";
    case Axiom::kNonzeroDiagonal: return "nonzero_diagonal";
    case Axiom::kZeroOffDiagonal: return "identity_of_indiscernibles";
    case Axiom::kAsymmetry: return "symmetry";
    case Axiom::kTriangle: return "triangle";
  }
  return "unknown";
}

ValidationReport validate_metric(const RationalMatrix& matrix) {
  require_square(matrix);
  const std::size_t n = matrix.size();
  ValidationReport report;
  auto add = [&](Axiom a, std::vector<PointIndex> w) {
    report.violations.push_back({a, std::move(w)});
  };

  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] != 0) add(Axiom::kNonzeroDiagonal, {i, i});
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix[i][j] < 0) add(Axiom::kNegativeDistance, {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] == 0 || matrix[j][i] == 0) {
        add(Axiom::kZeroOffDiagonal, {i, j});
      }
      if (matrix[i][j] != matrix[j][i]) add(Axiom::kAsymmetry, {i, j});
    }
  }
  // Unordered pairs {i, k} against every intermediate j.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        if (matrix[i][k] > matrix[i][j] + matrix[j][k]) {
          add(Axiom::kTriangle, {i, j, k});
        }
      }
    }
  }
  report.valid = report.violations.empty();
  return report;
}

std::vector<std::string> default_labels(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back("x" + std::to_string(i + 1));
  }
  return labels;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     RationalMatrix dist)
    : labels_(std::move(labels)), dist_(std::move(dist)) {
  if (labels_.empty()) throw StructuralError("metric space has no points");
  if (labels_.size() != dist_.size()) {
    throw StructuralError("label count does not match matrix size");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw StructuralError("empty point label");
    if (!seen.insert(l).second) {
      throw StructuralError("duplicate point label '" + l + "'");
    }
  }
  const ValidationReport report = validate_metric(dist_);
  if (!report.valid) {
    throw StructuralError("not a metric: " + describe(report.violations[0]));
  }
}

FiniteMetricSpace::FiniteMetricSpace(const RationalMatrix& dist)
    : FiniteMetricSpace(default_labels(dist.size()), dist) {}

PointIndex FiniteMetricSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  throw ArgumentError("unknown point label '" + label + "'");
}

bool is_ultrametric(const FiniteMetricSpace& space) {
  const auto& d = space.matrix();
  const std::size_t n = space.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i][k] > std::max(d[i][j], d[j][k])) return false;
      }
    }
  }
  return true;
}

Rational total_pairwise_sum(const FiniteMetricSpace& space,
                            std::span<const PointIndex> tuple) {
  if (tuple.size() < 2) {
    throw ArgumentError("pairwise sum needs at least two points");
  }
  for (PointIndex p : tuple) {
    if (p >= space.size()) {
      throw ArgumentError("point index " + std::to_string(p) +
                          " out of range");
    }
  }
  Rational sum = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    for (std::size_t j = i + 1; j < tuple.size(); ++j) {
      sum += space.distance(tuple[i], tuple[j]);
    }
  }
  return sum;
}

FiniteMetricSpace metric_closure(std::vector<std::string> labels,
                                 const RationalMatrix& raw) {
  require_square(raw);
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i][i] != 0) {
      throw StructuralError("closure input has a nonzero diagonal entry");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (raw[i][j] != raw[j][i]) {
        throw StructuralError("closure input is not symmetric");
      }
      if (raw[i][j] <= 0) {
        throw StructuralError(
            "closure input has a non-positive off-diagonal entry; points "
            "would merge");
      }
    }
  }
  RationalMatrix d = raw;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Rational via = d[i][k] + d[k][j];
        if (via < d[i][j]) d[i][j] = std::move(via);
      }
    }
  }
  return FiniteMetricSpace(std::move(labels), std::move(d));
}

FiniteMetricSpace metric_closure(const RationalMatrix& raw) {
  return metric_closure(default_labels(raw.size()), raw);
}

}  // namespace kannan
