#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kannan/classifiers.hpp"
#include "kannan/iteration.hpp"
#include "kannan/mappings.hpp"
#include "kannan/metric_space.hpp"
#include "kannan/search.hpp"

namespace kannan {

/// Contents of a space file: a metric space and, optionally, a self-map.
///
/// JSON form:
///   {"points": ["a", "b"], "dist": [["0", "3/2"], ["3/2", "0"]],
///    "map": [["a", "b"], ["b", "b"]]}
/// Distances are "p/q" or integer strings (JSON integers are accepted too).
/// CSV form: a square matrix with a header row and a header column of
/// labels; the CSV form carries no map.
struct SpaceDocument {
  std::vector<std::string> labels;
  RationalMatrix dist;
  std::optional<std::vector<PointIndex>> table;
};

/// Parses JSON or CSV (sniffed from the first non-blank character). Only the
/// document structure is checked here; metric axioms are checked by the
/// caller via validate_metric or FiniteMetricSpace. Throws StructuralError.
SpaceDocument parse_document(std::string_view text);

/// Builds the space and map; throws StructuralError when the matrix is not a
/// metric or the map is missing.
FiniteMetricSpace document_space(const SpaceDocument& doc);
SelfMap document_map(const SpaceDocument& doc);

/// Pretty-printed JSON document (space plus map).
std::string emit_document(const SelfMap& map);
std::string emit_document(const FiniteMetricSpace& space);

std::string validation_json(const ValidationReport& report,
                            const std::vector<std::string>& labels);
std::string classification_json(const ClassificationReport& report,
                                 const FiniteMetricSpace& space,
                                 bool with_approx = false);
std::string theorem_report_json(const TheoremReport& report);
std::string campaign_json(const CampaignSummary& summary);
std::string separation_json(const std::vector<SeparationWitness>& witnesses,
                            std::size_t n);
std::string certificate_json(const CauchyCertificate& cert);

/// Tab-separated "step, point, gap" rows, gaps rendered "p/q".
std::string trace_table(const IterationTrace& trace,
                        const FiniteMetricSpace& space);

}  // namespace kannan
