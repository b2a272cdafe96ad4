#include "kannan/document.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include <json.hpp>

#include "kannan/errors.hpp"

namespace kannan {
namespace {

using Json = nlohmann::ordered_json;

Rational json_rational(const Json& v) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) {
      return parse_rational(std::to_string(v.get<long long>()));
    }
  } catch (const ArgumentError& e) {
    throw StructuralError(e.what());
  }
  throw StructuralError("distance must be a \"p/q\" string or an integer, got " +
                        v.dump());
}

Json tuple_json(const PointTuple& tuple, const FiniteMetricSpace& space) {
  Json out = Json::array();
  for (PointIndex p : tuple) out.push_back(space.label(p));
  return out;
}

Json coefficient_json(const Coefficient& c) {
  return Json(to_string(c));
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

SpaceDocument parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.size() < 2) throw StructuralError("CSV matrix needs a header and rows");
  SpaceDocument doc;
  doc.labels.assign(rows[0].begin() + 1, rows[0].end());
  const std::size_t n = doc.labels.size();
  if (rows.size() - 1 != n) {
    throw StructuralError("CSV matrix is not square: " + std::to_string(n) +
                          " columns, " + std::to_string(rows.size() - 1) +
                          " rows");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = rows[i + 1];
    if (row.size() != n + 1) {
      throw StructuralError("CSV row " + std::to_string(i + 1) + " has " +
                            std::to_string(row.size() - 1) + " entries");
    }
    if (row[0] != doc.labels[i]) {
      throw StructuralError("CSV row label '" + row[0] +
                            "' does not match column label '" +
                            doc.labels[i] + "'");
    }
    std::vector<Rational> values;
    for (std::size_t j = 1; j <= n; ++j) {
      try {
        values.push_back(parse_rational(row[j]));
      } catch (const ArgumentError& e) {
        throw StructuralError(e.what());
      }
    }
    doc.dist.push_back(std::move(values));
  }
  return doc;
}

SpaceDocument parse_json(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw StructuralError(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("points") || !root.contains("dist")) {
    throw StructuralError("document needs 'points' and 'dist' fields");
  }
  SpaceDocument doc;
  if (!root["points"].is_array()) throw StructuralError("'points' must be a list");
  for (const Json& p : root["points"]) {
    if (!p.is_string()) throw StructuralError("point labels must be strings");
    doc.labels.push_back(p.get<std::string>());
  }
  if (!root["dist"].is_array()) throw StructuralError("'dist' must be a matrix");
  for (const Json& row : root["dist"]) {
    if (!row.is_array()) throw StructuralError("'dist' rows must be lists");
    std::vector<Rational> values;
    for (const Json& v : row) values.push_back(json_rational(v));
    doc.dist.push_back(std::move(values));
  }
  if (doc.dist.size() != doc.labels.size()) {
    throw StructuralError("'dist' has " + std::to_string(doc.dist.size()) +
                          " rows for " + std::to_string(doc.labels.size()) +
                          " points");
  }
  for (const auto& row : doc.dist) {
    if (row.size() != doc.labels.size()) {
      throw StructuralError("'dist' is not square");
    }
  }
  if (root.contains("map")) {
    const Json& m = root["map"];
    if (!m.is_array()) throw StructuralError("'map' must be a list of pairs");
    const std::size_t n = doc.labels.size();
    std::vector<PointIndex> table(n);
    std::vector<bool> seen(n, false);
    auto find = [&](const Json& label) -> PointIndex {
      if (!label.is_string()) throw StructuralError("map labels must be strings");
      const auto& s = label.get_ref<const std::string&>();
      for (std::size_t i = 0; i < n; ++i) {
        if (doc.labels[i] == s) return i;
      }
      throw StructuralError("map refers to unknown point '" + s + "'");
    };
    for (const Json& pair : m) {
      if (!pair.is_array() || pair.size() != 2) {
        throw StructuralError("map entries must be [label, image] pairs");
      }
      const PointIndex from = find(pair[0]);
      if (seen[from]) {
        throw StructuralError("map assigns '" + doc.labels[from] + "' twice");
      }
      seen[from] = true;
      table[from] = find(pair[1]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!seen[i]) {
        throw StructuralError("map has no image for '" + doc.labels[i] + "'");
      }
    }
    doc.table = std::move(table);
  }
  return doc;
}

Json space_json(const FiniteMetricSpace& space) {
  Json doc;
  doc["points"] = space.labels();
  Json dist = Json::array();
  for (const auto& row : space.matrix()) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    dist.push_back(std::move(r));
  }
  doc["dist"] = std::move(dist);
  return doc;
}

Json config_json(const GeneratorConfig& c) {
  Json j;
  j["scheme"] = scheme_name(c.scheme);
  if (c.scheme == MetricScheme::kSeparationFamily) {
    j["family_n"] = c.family_n;
    j["family_m"] = to_string(c.family_m);
  } else {
    j["seed"] = c.seed;
    j["size"] = c.size;
    j["map_scheme"] = scheme_name(c.map_scheme);
    j["denominator"] = c.denominator;
  }
  return j;
}

Json report_json(const ClassificationReport& r, const FiniteMetricSpace& space,
                 bool with_approx) {
  Json j;
  j["class"] = class_name(r.class_id);
  j["n"] = r.n;
  j["min_coefficient"] = coefficient_json(r.min_coefficient);
  j["bound"] = r.bound ? Json(to_string(*r.bound)) : Json(nullptr);
  j["member"] = r.member;
  j["witness"] = tuple_json(r.witness, space);
  j["witness_lhs"] = to_string(r.witness_lhs);
  j["witness_rhs"] = to_string(r.witness_rhs);
  if (with_approx && r.min_coefficient.is_finite()) {
    j["min_coefficient_approx"] = approx(r.min_coefficient.value());
  }
  return j;
}

}  // namespace

SpaceDocument parse_document(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_json(text) : parse_csv(text);
  }
  throw StructuralError("empty document");
}

FiniteMetricSpace document_space(const SpaceDocument& doc) {
  return FiniteMetricSpace(doc.labels, doc.dist);
}

SelfMap document_map(const SpaceDocument& doc) {
  if (!doc.table) throw StructuralError("document has no 'map' field");
  return SelfMap(document_space(doc), *doc.table);
}

std::string emit_document(const FiniteMetricSpace& space) {
  return space_json(space).dump(2) + "\n";
}

std::string emit_document(const SelfMap& map) {
  Json doc = space_json(map.space());
  Json pairs = Json::array();
  for (PointIndex i = 0; i < map.size(); ++i) {
    pairs.push_back({map.space().label(i), map.space().label(map(i))});
  }
  doc["map"] = std::move(pairs);
  return doc.dump(2) + "\n";
}

std::string validation_json(const ValidationReport& report,
                            const std::vector<std::string>& labels) {
  Json j;
  j["valid"] = report.valid;
  Json list = Json::array();
  for (const Violation& v : report.violations) {
    Json w = Json::array();
    for (PointIndex p : v.witness) {
      w.push_back(p < labels.size() ? labels[p] : std::to_string(p + 1));
    }
    list.push_back({{"axiom", axiom_name(v.axiom)}, {"witness", w}});
  }
  j["violations"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string classification_json(const ClassificationReport& report,
                                 const FiniteMetricSpace& space,
                                 bool with_approx) {
  return report_json(report, space, with_approx).dump(2) + "\n";
}

std::string theorem_report_json(const TheoremReport& report) {
  Json j;
  j["n"] = report.n;
  j["npk_member"] = report.npk_member;
  j["all_hold"] = report.all_hold();
  Json claims = Json::array();
  for (const ClaimVerdict& v : report.claims) {
    claims.push_back({{"claim", claim_name(v.claim)},
                      {"applicable", v.applicable},
                      {"holds", v.holds},
                      {"detail", v.detail}});
  }
  j["claims"] = std::move(claims);
  return j.dump(2) + "\n";
}

std::string campaign_json(const CampaignSummary& s) {
  Json j;
  j["trials"] = s.config.trials;
  j["seed"] = s.config.seed;
  j["sizes"] = {s.config.size_min, s.config.size_max};
  j["n_values"] = {s.config.n_min, s.config.n_max};
  j["npk_members"] = s.npk_members;
  j["instances_by_scheme"] = s.instances_by_scheme;
  Json claims;
  for (const auto& [claim, tally] : s.tallies) {
    claims[claim_name(claim)] = {{"applicable", tally.applicable},
                                 {"held", tally.held},
                                 {"failed", tally.failed}};
  }
  j["claims"] = std::move(claims);
  Json failures = Json::array();
  for (const CampaignFailure& f : s.failures) {
    failures.push_back({{"trial", f.trial},
                        {"claim", claim_name(f.claim)},
                        {"n", f.n},
                        {"config", config_json(f.config)},
                        {"detail", f.detail},
                        {"replay", f.replay}});
  }
  j["failures"] = std::move(failures);
  j["passed"] = s.passed();
  return j.dump(2) + "\n";
}

std::string separation_json(const std::vector<SeparationWitness>& witnesses,
                            std::size_t n) {
  Json j;
  j["n"] = n;
  Json list = Json::array();
  for (const SeparationWitness& w : witnesses) {
    list.push_back({{"config", config_json(w.config)},
                    {"replay", replay_command(w.config, n)},
                    {"n_point", report_json(w.n_point, w.map.space(), false)},
                    {"fewer_points",
                     report_json(w.fewer_points, w.map.space(), false)}});
  }
  j["witnesses"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string certificate_json(const CauchyCertificate& cert) {
  Json j;
  j["n"] = cert.n;
  j["lambda"] = to_string(cert.lambda);
  j["rho"] = to_string(cert.rho);
  j["applicable"] = cert.applicable;
  if (cert.gaps) {
    j["rho_min"] = to_string(cert.gaps->rho_min);
    j["envelope_scale"] = to_string(cert.gaps->envelope_scale);
  }
  j["gap_condition_ok"] = cert.gap_condition_ok;
  j["envelope_ok"] = cert.envelope.ok;
  if (cert.envelope.first_violation) {
    j["envelope_first_violation"] = *cert.envelope.first_violation;
  }
  j["tail_bound_approx"] = cert.tail_bound;
  j["satisfied"] = cert.satisfied();
  return j.dump(2) + "\n";
}

std::string trace_table(const IterationTrace& trace,
                        const FiniteMetricSpace& space) {
  std::ostringstream out;
  out << "step\tpoint\tgap\n";
  for (std::size_t i = 0; i < trace.points.size(); ++i) {
    out << i << '\t' << space.label(trace.points[i]) << '\t';
    if (i < trace.gaps.size()) out << to_string(trace.gaps[i]);
    out << '\n';
  }
  return out.str();
}

}  // namespace kannan
