#include "cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kannan/classifiers.hpp"
#include "kannan/document.hpp"
#include "kannan/errors.hpp"
#include "kannan/iteration.hpp"
#include "kannan/mappings.hpp"
#include "kannan/search.hpp"

namespace kannan::cli {
namespace {

enum class Verbosity { kQuiet, kNormal, kVerbose };

struct OutputOptions {
  bool json_only = false;
  bool quiet = false;
  bool verbose = false;
  bool approx = false;
  std::size_t jobs = 1;

  Verbosity verbosity() const {
    if (quiet) return Verbosity::kQuiet;
    return verbose ? Verbosity::kVerbose : Verbosity::kNormal;
  }
};

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const std::size_t v = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, dots);
    const std::string b = text.substr(dots + 2);
    Range r{std::stoul(a, &used), 0};
    if (used != a.size()) throw std::invalid_argument(text);
    r.hi = std::stoul(b, &used);
    if (used != b.size() || r.lo > r.hi) throw std::invalid_argument(text);
    return r;
  } catch (const std::logic_error&) {
    throw ArgumentError("bad range '" + text + "', expected N or A..B");
  }
}

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw StructuralError("cannot open '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

std::string label_set(const PointTuple& tuple, const FiniteMetricSpace& space) {
  std::string out = "{";
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    out += (i ? "," : "") + space.label(tuple[i]);
  }
  return out + "}";
}

std::string with_approx(const std::string& exact, const Rational& value,
                        bool approx_on) {
  if (!approx_on) return exact;
  std::ostringstream s;
  s << exact << " (~" << std::setprecision(10) << approx(value) << ")";
  return s.str();
}

void row(std::ostream& out, const std::string& key, const std::string& value) {
  out << "  " << std::left << std::setw(14) << key << value << '\n';
}

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
  cmd->add_flag("--json", o.json_only, "Emit only the machine document");
  cmd->add_flag("-q,--quiet", o.quiet, "Print only the verdict line");
  cmd->add_flag("-v,--verbose", o.verbose, "Print witnesses");
  cmd->add_flag("--approx", o.approx, "Add decimal renderings (display only)");
  cmd->add_option("-j,--jobs", o.jobs, "Worker threads (0 = all cores)");
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, const OutputOptions& o,
                 std::istream& in, std::ostream& out) {
  const SpaceDocument doc = parse_document(read_input(path, in));
  const ValidationReport report = validate_metric(doc.dist);
  std::optional<bool> ultra;
  if (report.valid) ultra = is_ultrametric(document_space(doc));

  if (!o.json_only) {
    if (o.quiet) {
      out << (report.valid ? "valid" : "invalid") << '\n';
    } else {
      out << "metric: " << (report.valid ? "valid" : "invalid") << " ("
          << doc.labels.size() << " points)\n";
      if (ultra) out << "ultrametric: " << (*ultra ? "yes" : "no") << '\n';
      for (const Violation& v : report.violations) {
        out << "  violation " << axiom_name(v.axiom) << " at (";
        for (std::size_t i = 0; i < v.witness.size(); ++i) {
          out << (i ? "," : "") << doc.labels[v.witness[i]];
        }
        out << ")\n";
      }
    }
  }
  if (o.json_only || !o.quiet) {
    auto j = nlohmann::ordered_json::parse(validation_json(report, doc.labels));
    if (ultra) j["ultrametric"] = *ultra;
    out << j.dump(2) << '\n';
  }
  return report.valid ? kSuccess : kInputError;
}

// ---------------------------------------------------------------- classify

int cmd_classify(const std::string& path, const std::string& cls,
                 std::optional<std::size_t> n, const OutputOptions& o,
                 std::istream& in, std::ostream& out) {
  const SelfMap map = document_map(parse_document(read_input(path, in)));
  const EnumerationOptions eo{o.jobs};
  ClassificationReport r;
  if (cls == "kannan") {
    r = kannan_min_coefficient(map, eo);
  } else {
    if (!n) throw ArgumentError("--n is required for --class " + cls);
    r = cls == "npk" ? npk_min_coefficient(map, *n, eo)
                     : tpd_min_coefficient(map, *n, eo);
  }
  const FiniteMetricSpace& space = map.space();

  if (o.quiet && !o.json_only) {
    out << to_string(r.min_coefficient) << ' '
        << (r.member ? "member" : "non-member") << '\n';
    return r.member ? kSuccess : kNegative;
  }
  if (!o.json_only) {
    const std::string coeff =
        r.min_coefficient.is_finite()
            ? with_approx(to_string(r.min_coefficient), r.min_coefficient.value(),
                          o.approx)
            : "inf";
    out << "classification\n";
    row(out, "class", std::string(class_name(r.class_id)) +
                          (r.class_id == ContractionClass::kKannan
                               ? ""
                               : " (n = " + std::to_string(r.n) + ")"));
    row(out, "min coeff", coeff);
    row(out, "bound", r.bound ? "< " + to_string(*r.bound) : "-");
    row(out, "member", r.member ? "yes" : "no");
    row(out, "witness", label_set(r.witness, space));
    if (o.verbose) {
      row(out, "lhs", to_string(r.witness_lhs));
      row(out, "rhs", to_string(r.witness_rhs));
      std::string images;
      for (PointIndex p : r.witness) {
        images += (images.empty() ? "" : ",") + space.label(map(p));
      }
      row(out, "images", "(" + images + ")");
    }
    out << '\n';
  }
  out << classification_json(r, space, o.approx);
  return r.member ? kSuccess : kNegative;
}

// ---------------------------------------------------------------- iterate

int cmd_iterate(const std::string& path, const std::string& start,
                std::size_t max_steps, bool certify,
                const std::optional<std::string>& lambda_text,
                std::optional<std::size_t> n, const OutputOptions& o,
                std::istream& in, std::ostream& out) {
  const SelfMap map = document_map(parse_document(read_input(path, in)));
  const FiniteMetricSpace& space = map.space();
  PointIndex start_index = 0;
  try {
    start_index = space.index_of(start);
  } catch (const ArgumentError& e) {
    throw StructuralError(e.what());
  }
  const IterationTrace trace = picard(map, start_index, max_steps);

  std::optional<CauchyCertificate> cert;
  if (certify) {
    if (!lambda_text) throw ArgumentError("--certify needs --lambda p/q");
    cert = cauchy_certificate(trace, n.value_or(map.size()),
                              parse_rational(*lambda_text));
  }

  if (!o.json_only) {
    if (!o.quiet) out << trace_table(trace, space);
    out << "termination: " << termination_name(trace.termination);
    if (trace.termination == Termination::kFixedPoint) {
      out << " " << space.label(trace.fixed_point) << " at step " << trace.step;
    } else if (trace.termination == Termination::kCycle) {
      out << " prime period " << trace.prime_period << " entered at step "
          << trace.step;
    }
    out << '\n';
    if (cert) {
      out << "certificate: rho " << to_string(cert->rho);
      if (cert->gaps) out << ", rho_min " << to_string(cert->gaps->rho_min);
      out << ", " << (cert->satisfied() ? "satisfied" : "violated") << '\n';
    }
  }
  if (o.json_only || o.verbose) {
    nlohmann::ordered_json j;
    j["start"] = start;
    j["termination"] = termination_name(trace.termination);
    j["step"] = trace.step;
    if (trace.termination == Termination::kFixedPoint) {
      j["fixed_point"] = space.label(trace.fixed_point);
    }
    if (trace.termination == Termination::kCycle) {
      j["prime_period"] = trace.prime_period;
    }
    auto points = nlohmann::ordered_json::array();
    for (PointIndex p : trace.points) points.push_back(space.label(p));
    j["points"] = points;
    auto gaps = nlohmann::ordered_json::array();
    for (const auto& g : trace.gaps) gaps.push_back(to_string(g));
    j["gaps"] = gaps;
    if (cert) j["certificate"] = nlohmann::ordered_json::parse(certificate_json(*cert));
    out << j.dump(2) << '\n';
  }
  return cert && !cert->satisfied() ? kNegative : kSuccess;
}

// ---------------------------------------------------------------- example

int cmd_example(std::size_t n, const std::string& m_text, bool emit,
                const OutputOptions& o, std::ostream& out) {
  const SelfMap map = make_separation_family(n, parse_rational(m_text));
  if (emit) {
    out << emit_document(map);
    return kSuccess;
  }
  PointTuple all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  const Rational spread = image_spread(map, all);
  const Rational moved = displacement_sum(map, all);
  const Rational ratio = spread / moved;
  const Rational bound(static_cast<unsigned long>(n - 1),
                       static_cast<unsigned long>(n));
  out << "two-scale ultrametric family E(" << n << ", " << m_text << ")\n";
  row(out, "ultrametric", is_ultrametric(map.space()) ? "yes" : "no");
  row(out, "fixed points", label_set(fixed_points(map), map.space()));
  row(out, "S(images)", to_string(spread));
  row(out, "sum d(x,Tx)", to_string(moved));
  row(out, "ratio", with_approx(to_string(ratio), ratio, o.approx));
  row(out, "bound", "< " + to_string(bound));
  row(out, "n-point", ratio < bound ? "member" : "non-member");
  return kSuccess;
}

// ---------------------------------------------------------------- search

struct GeneratorFlags {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> size;
  std::string scheme = "closure";
  std::string map_scheme = "fixed_point_biased";
  std::uint64_t denominator = 840;
  std::size_t family_n = 4;
  std::string family_m = "10";

  GeneratorConfig config() const {
    GeneratorConfig c;
    c.seed = seed.value_or(0);
    c.size = size.value_or(4);
    c.scheme = parse_metric_scheme(scheme);
    c.map_scheme = parse_map_scheme(map_scheme);
    c.denominator = denominator;
    c.family_n = family_n;
    c.family_m = parse_rational(family_m);
    return c;
  }
};

void add_generator_flags(CLI::App* cmd, GeneratorFlags& g) {
  cmd->add_option("--size", g.size, "Point count of generated spaces");
  cmd->add_option("--scheme", g.scheme,
                  "range_1_2 | closure | separation_family");
  cmd->add_option("--map-scheme", g.map_scheme,
                  "uniform | fixed_point_biased");
  cmd->add_option("--denominator", g.denominator,
                  "Common denominator of random distances");
  cmd->add_option("--family-n", g.family_n, "n of E(n, M)");
  cmd->add_option("--family-m", g.family_m, "M of E(n, M), as p/q");
}

int cmd_search(const std::string& mode, const std::string& n_text,
               std::size_t trials, std::uint64_t seed,
               const std::string& sizes_text, const GeneratorFlags& gen,
               const OutputOptions& o, std::ostream& out) {
  const Range ns = parse_range(n_text);
  const Range sizes = parse_range(sizes_text);
  if (mode == "separation") {
    if (ns.lo != ns.hi) throw ArgumentError("separation takes a single --n");
    GeneratorConfig base = gen.config();
    base.seed = seed;
    base.size = sizes.lo;
    const auto found = mine_separation(ns.lo, trials, base);
    if (!o.json_only) {
      out << "separation witnesses for n = " << ns.lo << ": " << found.size()
          << '\n';
      for (const auto& w : found) {
        out << "  " << replay_command(w.config, ns.lo) << "  npk(" << ns.lo
            << ") = " << to_string(w.n_point.min_coefficient) << ", npk("
            << ns.lo - 1 << ") = " << to_string(w.fewer_points.min_coefficient)
            << '\n';
      }
      out << '\n';
    }
    if (o.json_only || !o.quiet) out << separation_json(found, ns.lo);
    return kSuccess;
  }
  if (mode != "campaign") {
    throw ArgumentError("unknown search mode '" + mode + "'");
  }
  CampaignConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.size_min = sizes.lo;
  cfg.size_max = sizes.hi;
  cfg.n_min = ns.lo;
  cfg.n_max = ns.hi;
  cfg.jobs = o.jobs;
  const CampaignSummary summary = campaign(cfg);
  if (!o.json_only) {
    out << "campaign: " << cfg.trials << " trials, seed " << cfg.seed << ", "
        << summary.npk_members << " n-point members\n";
    for (const auto& [claim, t] : summary.tallies) {
      out << "  " << std::left << std::setw(24) << claim_name(claim)
          << "applicable " << std::setw(7) << t.applicable << "failed "
          << t.failed << '\n';
    }
    for (const auto& f : summary.failures) {
      out << "  FAIL " << claim_name(f.claim) << " trial " << f.trial << ": "
          << f.detail << "\n    replay: " << f.replay << '\n';
    }
    out << '\n';
  }
  if (o.json_only || !o.quiet) out << campaign_json(summary);
  return summary.passed() ? kSuccess : kNegative;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& path, std::size_t n,
               const GeneratorFlags& gen, const OutputOptions& o,
               std::istream& in, std::ostream& out) {
  const bool from_generator =
      gen.seed.has_value() || gen.scheme == "separation_family";
  const SelfMap map = from_generator
                          ? generate(gen.config())
                          : document_map(parse_document(read_input(path, in)));
  const TheoremReport report = verify_theorems(map, n);
  if (!o.json_only) {
    out << "n = " << n << ", n-point member: "
        << (report.npk_member ? "yes" : "no") << '\n';
    for (const ClaimVerdict& v : report.claims) {
      const char* status =
          !v.holds ? "FAIL" : (v.applicable ? "holds" : "vacuous");
      out << "  " << std::left << std::setw(24) << claim_name(v.claim)
          << status;
      if ((o.verbose || !v.holds) && !v.detail.empty()) {
        out << "  " << v.detail;
      }
      out << '\n';
    }
    out << '\n';
  }
  if (o.json_only || !o.quiet) out << theorem_report_json(report);
  return report.all_hold() ? kSuccess : kNegative;
}

}  // namespace

std::size_t default_jobs() {
  if (const char* env = std::getenv("KANNAN_JOBS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact classification and fixed-point analysis of self-maps "
               "on finite metric spaces",
               "kannan-lab"};
  app.require_subcommand(1);
  OutputOptions o;
  o.jobs = default_jobs();

  std::string path;
  std::optional<std::size_t> n;
  std::string n_text = "2..5";

  auto* validate = app.add_subcommand("validate", "Check the metric axioms");
  validate->add_option("file", path, "Space document (JSON or CSV); - for stdin");
  add_output_flags(validate, o);

  std::string cls = "npk";
  auto* classify =
      app.add_subcommand("classify", "Exact minimal coefficient of a class");
  classify->add_option("file", path, "Space+map document; - for stdin");
  classify->add_option("--class", cls, "kannan | npk | tpd")
      ->check(CLI::IsMember({"kannan", "npk", "tpd"}));
  classify->add_option("--n", n, "Number of points");
  add_output_flags(classify, o);

  std::string start;
  std::size_t max_steps = 1000;
  bool certify = false;
  std::optional<std::string> lambda;
  auto* iterate = app.add_subcommand("iterate", "Picard iteration trace");
  iterate->add_option("file", path, "Space+map document; - for stdin");
  iterate->add_option("--start", start, "Start point label")->required();
  iterate->add_option("--max-steps", max_steps, "Iteration budget");
  iterate->add_flag("--certify", certify, "Check the gap decay certificate");
  iterate->add_option("--lambda", lambda, "n-point coefficient, p/q");
  iterate->add_option("--n", n, "Window size (default |X|)");
  add_output_flags(iterate, o);

  std::size_t example_n = 4;
  std::string example_m = "10";
  bool emit = false;
  auto* example = app.add_subcommand("example", "The two-scale family E(n, M)");
  example->add_option("--n", example_n, "Point count, >= 3")->required();
  example->add_option("--M,-M", example_m, "Far distance, p/q > 1")->required();
  example->add_flag("--emit", emit, "Print the space+map document");
  add_output_flags(example, o);

  std::string mode = "campaign";
  std::size_t trials = 1000;
  std::uint64_t seed = 7;
  std::string sizes_text = "3..7";
  GeneratorFlags search_gen;
  auto* search = app.add_subcommand("search", "Witness mining and campaigns");
  search->add_option("--mode", mode, "separation | campaign")
      ->check(CLI::IsMember({"separation", "campaign"}));
  search->add_option("--n", n_text, "n or A..B");
  search->add_option("--trials", trials, "Random instances");
  search->add_option("--seed", seed, "Run seed");
  search->add_option("--sizes", sizes_text, "Space sizes, A..B");
  search->add_option("--scheme", search_gen.scheme,
                     "Metric scheme for separation mining");
  search->add_option("--map-scheme", search_gen.map_scheme,
                     "Map scheme for separation mining");
  add_output_flags(search, o);

  std::size_t verify_n = 2;
  GeneratorFlags verify_gen;
  auto* verify = app.add_subcommand("verify", "Check every theorem claim");
  verify->add_option("file", path, "Space+map document; - for stdin");
  verify->add_option("--n", verify_n, "Number of points")->required();
  verify->add_option("--seed", verify_gen.seed,
                     "Build the instance from a generator config instead");
  add_generator_flags(verify, verify_gen);
  add_output_flags(verify, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  try {
    if (*validate) return cmd_validate(path, o, in, out);
    if (*classify) return cmd_classify(path, cls, n, o, in, out);
    if (*iterate) {
      return cmd_iterate(path, start, max_steps, certify, lambda, n, o, in,
                         out);
    }
    if (*example) return cmd_example(example_n, example_m, emit, o, out);
    if (*search) {
      return cmd_search(mode, n_text, trials, seed, sizes_text, search_gen, o,
                        out);
    }
    if (*verify) return cmd_verify(path, verify_n, verify_gen, o, in, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (o.json_only) {
      nlohmann::ordered_json j;
      j["error"] = e.what();
      out << j.dump(2) << '\n';
    }
    return kInputError;
  }
  return kInputError;
}

}  // namespace kannan::cli
