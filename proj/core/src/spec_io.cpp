#include "johncheck/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <utility>

#include "johncheck/rules.hpp"
#include "johncheck/version.hpp"

namespace johncheck {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw SchemaError(path + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* name) {
  const auto it = obj.find(name);
  if (it == obj.end())
    schema_fail(path, std::string("missing field \"") + name + "\"");
  return *it;
}

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* a) { return it.key() == a; });
    if (!known) schema_fail(path, "unknown field \"" + it.key() + "\"");
  }
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

int integer_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<int>();
}

bool boolean_at(const json& j, const std::string& path) {
  if (!j.is_boolean()) schema_fail(path, "expected a boolean");
  return j.get<bool>();
}

std::string string_at(const json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

Vector vector_at(const json& j, const std::string& path, int expected_d) {
  if (!j.is_array()) schema_fail(path, "expected an array of numbers");
  Vector v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(number_at(j[i], path + "[" + std::to_string(i) + "]"));
  if (expected_d >= 0 && static_cast<int>(v.size()) != expected_d)
    throw ValidationError(path + ": length " + std::to_string(v.size()) +
                          " does not match d=" + std::to_string(expected_d));
  return v;
}

SquareMatrix matrix_at(const json& j, const std::string& path, int d) {
  if (!j.is_array()) schema_fail(path, "expected an array of rows");
  if (static_cast<int>(j.size()) != d)
    throw ValidationError(path + ": " + std::to_string(j.size()) +
                          " rows do not match d=" + std::to_string(d));
  SquareMatrix m(d);
  for (int i = 0; i < d; ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) schema_fail(row_path, "expected an array of numbers");
    if (static_cast<int>(row.size()) != d)
      throw ValidationError(row_path + ": length " + std::to_string(row.size()) +
                            " does not match d=" + std::to_string(d));
    for (int c = 0; c < d; ++c)
      m(i, c) = number_at(row[static_cast<std::size_t>(c)],
                          row_path + "[" + std::to_string(c) + "]");
  }
  return m;
}

LambdaMeasure measure_at(const json& j, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  const std::string type = string_at(member(j, path, "type"), path + ".type");
  if (type == "uniform") {
    reject_unknown(j, path, {"type"});
    return LambdaMeasure::uniform();
  }
  if (type == "discrete") {
    reject_unknown(j, path, {"type", "atoms"});
    const json& atoms = member(j, path, "atoms");
    if (!atoms.is_array()) schema_fail(path + ".atoms", "expected an array");
    std::vector<LambdaMeasure::Atom> parsed;
    parsed.reserve(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const std::string at = path + ".atoms[" + std::to_string(i) + "]";
      const json& a = atoms[i];
      if (!a.is_object()) schema_fail(at, "expected an object");
      reject_unknown(a, at, {"lambda", "weight"});
      LambdaMeasure::Atom atom;
      atom.lambda = number_at(member(a, at, "lambda"), at + ".lambda");
      atom.weight = number_at(member(a, at, "weight"), at + ".weight");
      parsed.push_back(atom);
    }
    return LambdaMeasure::discrete(std::move(parsed));
  }
  schema_fail(path + ".type", "unknown measure type \"" + type + "\"");
}

// Menus and matrices are d x d dense; this only guards against documents
// sized to exhaust memory.
constexpr int kMaxDimension = 1024;

int dimension_field(const json& doc, const std::string& path) {
  const int d = integer_at(member(doc, path, "d"), path + ".d");
  if (d < 1 || d > kMaxDimension)
    throw ValidationError(path + ".d: must be between 1 and " +
                          std::to_string(kMaxDimension));
  return d;
}

json box_to_json(const std::vector<std::pair<double, double>>& box) {
  json arr = json::array();
  for (const auto& [lo, hi] : box) arr.push_back(json::array({lo, hi}));
  return arr;
}

std::vector<std::pair<double, double>> box_from_json(const json& j,
                                                     const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of [lo, hi] pairs");
  std::vector<std::pair<double, double>> box;
  box.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = path + "[" + std::to_string(i) + "]";
    const json& pair = j[i];
    if (!pair.is_array() || pair.size() != 2)
      schema_fail(at, "expected a [lo, hi] pair");
    box.emplace_back(number_at(pair[0], at + "[0]"),
                     number_at(pair[1], at + "[1]"));
  }
  return box;
}

Verdict verdict_from_string(const std::string& s, const std::string& path) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail_symmetry") return Verdict::fail_symmetry;
  if (s == "fail_psd") return Verdict::fail_psd;
  if (s == "domain_error") return Verdict::domain_error;
  schema_fail(path, "unknown verdict \"" + s + "\"");
}

}  // namespace

RuleSpec parse_rule_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());  // message carries the line/column locator
  }
  if (!doc.is_object()) schema_fail("spec", "expected a JSON object");
  const std::string kind = string_at(member(doc, "spec", "kind"), "spec.kind");

  RuleSpec spec;
  if (kind == "builtin") {
    reject_unknown(doc, "spec", {"kind", "name"});
    const std::string name = string_at(member(doc, "spec", "name"), "spec.name");
    const RuleSpec* hit = find_builtin(name);
    if (hit == nullptr) schema_fail("spec.name", "unknown builtin \"" + name + "\"");
    spec = *hit;
  } else if (kind == "finite_menu_mixture") {
    reject_unknown(doc, "spec", {"kind", "d", "outcomes", "lambda_measure"});
    const int d = dimension_field(doc, "spec");
    FiniteMenuMixture mix;
    const json& outs = member(doc, "spec", "outcomes");
    if (!outs.is_array()) schema_fail("spec.outcomes", "expected an array");
    mix.menu.outcomes.reserve(outs.size());
    for (std::size_t i = 0; i < outs.size(); ++i) {
      const std::string at = "spec.outcomes[" + std::to_string(i) + "]";
      const json& o = outs[i];
      if (!o.is_object()) schema_fail(at, "expected an object");
      reject_unknown(o, at, {"z", "cost"});
      Outcome out;
      out.z = vector_at(member(o, at, "z"), at + ".z", d);
      out.cost = number_at(member(o, at, "cost"), at + ".cost");
      mix.menu.outcomes.push_back(std::move(out));
    }
    mix.measure = doc.contains("lambda_measure")
                      ? measure_at(doc["lambda_measure"], "spec.lambda_measure")
                      : LambdaMeasure::uniform();
    spec.value = std::move(mix);
  } else if (kind == "quadratic_family") {
    reject_unknown(doc, "spec", {"kind", "d", "A", "b", "lambda_measure"});
    const int d = dimension_field(doc, "spec");
    QuadraticFamily q;
    q.hessian = matrix_at(member(doc, "spec", "A"), "spec.A", d);
    q.offset = doc.contains("b") ? vector_at(doc["b"], "spec.b", d)
                                 : Vector(static_cast<std::size_t>(d), 0.0);
    q.measure = doc.contains("lambda_measure")
                    ? measure_at(doc["lambda_measure"], "spec.lambda_measure")
                    : LambdaMeasure::uniform();
    spec.value = std::move(q);
  } else if (kind == "linear_rule") {
    reject_unknown(doc, "spec", {"kind", "d", "Mx", "My"});
    const int d = dimension_field(doc, "spec");
    LinearRule lin;
    lin.mat_x = matrix_at(member(doc, "spec", "Mx"), "spec.Mx", d);
    lin.mat_y = matrix_at(member(doc, "spec", "My"), "spec.My", d);
    spec.value = std::move(lin);
  } else {
    schema_fail("spec.kind", "unknown kind \"" + kind + "\"");
  }

  const ValidationReport report = validate_spec(spec);
  if (!report.ok()) {
    std::string msg;
    for (const ValidationIssue& issue : report.issues) {
      if (!msg.empty()) msg += "; ";
      msg += issue.field + ": " + issue.message;
    }
    throw ValidationError(msg);
  }
  return spec;
}

RuleSpec load_rule_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule_spec(buf.str());
}

std::string rule_kind(const RuleSpec& spec) {
  struct Visitor {
    std::string operator()(const BuiltinTwoGoodAssignment&) const {
      return "builtin";
    }
    std::string operator()(const FiniteMenuMixture&) const {
      return "finite_menu_mixture";
    }
    std::string operator()(const QuadraticFamily&) const {
      return "quadratic_family";
    }
    std::string operator()(const LinearRule&) const { return "linear_rule"; }
  };
  return std::visit(Visitor{}, spec.value);
}

nlohmann::ordered_json report_to_json(const SuiteReport& report,
                                      const CheckConfig& cfg,
                                      const std::string& rule_kind_tag) {
  json doc;
  doc["tool"] = std::string(kToolName);
  doc["version"] = std::string(kVersion);
  doc["rule_kind"] = rule_kind_tag;
  doc["verdict"] = to_string(report.verdict);
  doc["seed"] = cfg.seed;
  doc["samples"] = json{{"requested", report.requested_samples},
                        {"evaluated", report.diagnostics.size()},
                        {"domain_errors", report.domain_errors}};
  doc["tolerances"] = json{{"sym", cfg.tol_sym},
                           {"psd", cfg.tol_psd},
                           {"fd_step_scale", cfg.fd.step_scale},
                           {"percentile_verdict", cfg.percentile_verdict}};
  doc["box"] = json{{"x", box_to_json(cfg.box_x)}, {"y", box_to_json(cfg.box_y)}};
  doc["summary"] = json{{"worst_sym", report.worst_sym},
                        {"worst_min_eig", report.worst_min_eig},
                        {"worst_sym_rel", report.worst_sym_rel},
                        {"worst_min_eig_rel", report.worst_min_eig_rel},
                        {"p95_sym_rel", report.p95_sym_rel},
                        {"p05_min_eig_rel", report.p05_min_eig_rel}};
  json pts = json::array();
  for (const PointDiagnostic& d : report.diagnostics) {
    json pt;
    pt["x"] = d.point.x;
    pt["y"] = d.point.y;
    pt["sym_x"] = d.sym_x;
    pt["sym_y"] = d.sym_y;
    pt["min_eig_x"] = d.min_eig_x;
    pt["min_eig_y"] = d.min_eig_y;
    pt["jx_norm"] = d.jx_norm;
    pt["jy_norm"] = d.jy_norm;
    if (d.john_residual) pt["john_residual"] = *d.john_residual;
    pts.push_back(std::move(pt));
  }
  doc["points"] = std::move(pts);
  return doc;
}

SuiteReport report_from_json(const nlohmann::ordered_json& doc,
                             CheckConfig* cfg_out) {
  if (!doc.is_object()) schema_fail("report", "expected a JSON object");
  SuiteReport r;
  CheckConfig cfg;

  r.verdict = verdict_from_string(
      string_at(member(doc, "report", "verdict"), "report.verdict"),
      "report.verdict");
  const json& seed = member(doc, "report", "seed");
  if (!seed.is_number_unsigned() && !seed.is_number_integer())
    schema_fail("report.seed", "expected an integer");
  cfg.seed = seed.get<std::uint64_t>();

  const json& samples = member(doc, "report", "samples");
  r.requested_samples =
      integer_at(member(samples, "report.samples", "requested"),
                 "report.samples.requested");
  r.domain_errors = integer_at(member(samples, "report.samples", "domain_errors"),
                               "report.samples.domain_errors");
  cfg.n_samples = r.requested_samples;

  const json& tols = member(doc, "report", "tolerances");
  cfg.tol_sym = number_at(member(tols, "report.tolerances", "sym"),
                          "report.tolerances.sym");
  cfg.tol_psd = number_at(member(tols, "report.tolerances", "psd"),
                          "report.tolerances.psd");
  cfg.fd.step_scale =
      number_at(member(tols, "report.tolerances", "fd_step_scale"),
                "report.tolerances.fd_step_scale");
  cfg.percentile_verdict =
      boolean_at(member(tols, "report.tolerances", "percentile_verdict"),
                 "report.tolerances.percentile_verdict");

  const json& box = member(doc, "report", "box");
  cfg.box_x = box_from_json(member(box, "report.box", "x"), "report.box.x");
  cfg.box_y = box_from_json(member(box, "report.box", "y"), "report.box.y");

  const json& summary = member(doc, "report", "summary");
  r.worst_sym = number_at(member(summary, "report.summary", "worst_sym"),
                          "report.summary.worst_sym");
  r.worst_min_eig =
      number_at(member(summary, "report.summary", "worst_min_eig"),
                "report.summary.worst_min_eig");
  r.worst_sym_rel =
      number_at(member(summary, "report.summary", "worst_sym_rel"),
                "report.summary.worst_sym_rel");
  r.worst_min_eig_rel =
      number_at(member(summary, "report.summary", "worst_min_eig_rel"),
                "report.summary.worst_min_eig_rel");
  r.p95_sym_rel = number_at(member(summary, "report.summary", "p95_sym_rel"),
                            "report.summary.p95_sym_rel");
  r.p05_min_eig_rel =
      number_at(member(summary, "report.summary", "p05_min_eig_rel"),
                "report.summary.p05_min_eig_rel");

  const json& pts = member(doc, "report", "points");
  if (!pts.is_array()) schema_fail("report.points", "expected an array");
  r.diagnostics.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string at = "report.points[" + std::to_string(i) + "]";
    const json& pt = pts[i];
    if (!pt.is_object()) schema_fail(at, "expected an object");
    PointDiagnostic d;
    d.point.x = vector_at(member(pt, at, "x"), at + ".x", -1);
    d.point.y = vector_at(member(pt, at, "y"), at + ".y", -1);
    d.sym_x = number_at(member(pt, at, "sym_x"), at + ".sym_x");
    d.sym_y = number_at(member(pt, at, "sym_y"), at + ".sym_y");
    d.min_eig_x = number_at(member(pt, at, "min_eig_x"), at + ".min_eig_x");
    d.min_eig_y = number_at(member(pt, at, "min_eig_y"), at + ".min_eig_y");
    d.jx_norm = number_at(member(pt, at, "jx_norm"), at + ".jx_norm");
    d.jy_norm = number_at(member(pt, at, "jy_norm"), at + ".jy_norm");
    if (pt.contains("john_residual"))
      d.john_residual = number_at(pt["john_residual"], at + ".john_residual");
    r.diagnostics.push_back(std::move(d));
  }

  if (cfg_out != nullptr) *cfg_out = cfg;
  return r;
}

}  // namespace johncheck
