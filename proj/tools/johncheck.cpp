// johncheck: diagnostics for dominant-strategy implementability of two-agent
// allocation rules. Subcommands: check, eval, construct, compare.
//
// Exit codes: 0 pass/match, 1 usage or spec error, 2 fail_psd,
// 3 fail_symmetry, 4 domain error, 5 compare mismatch.

#include <cerrno>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"

#include "johncheck/checker.hpp"
#include "johncheck/potential.hpp"
#include "johncheck/rules.hpp"
#include "johncheck/spec_io.hpp"
#include "johncheck/types.hpp"
#include "johncheck/version.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailPsd = 2;
constexpr int kExitFailSymmetry = 3;
constexpr int kExitDomainError = 4;
constexpr int kExitCompareMismatch = 5;

int exit_code_for(johncheck::Verdict v) {
  switch (v) {
    case johncheck::Verdict::pass: return kExitPass;
    case johncheck::Verdict::fail_psd: return kExitFailPsd;
    case johncheck::Verdict::fail_symmetry: return kExitFailSymmetry;
    case johncheck::Verdict::domain_error: return kExitDomainError;
  }
  return kExitUsage;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw johncheck::InvalidArgument(what + ": cannot parse \"" + tok +
                                     "\" as a number");
  }
}

johncheck::Vector parse_coords(const std::string& text, const std::string& what) {
  johncheck::Vector v;
  for (const std::string& tok : split(text, ','))
    v.push_back(parse_double(tok, what));
  return v;
}

// --box lo:hi,lo:hi,...  with 2d intervals: the d x-coordinates, then the d
// y-coordinates.
void apply_box(const std::string& text, int d, johncheck::CheckConfig& cfg) {
  const std::vector<std::string> toks = split(text, ',');
  if (static_cast<int>(toks.size()) != 2 * d)
    throw johncheck::InvalidArgument(
        "--box: expected " + std::to_string(2 * d) + " lo:hi intervals, got " +
        std::to_string(toks.size()));
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(toks.size());
  for (const std::string& tok : toks) {
    const std::vector<std::string> ends = split(tok, ':');
    if (ends.size() != 2)
      throw johncheck::InvalidArgument("--box: \"" + tok +
                                       "\" is not a lo:hi interval");
    intervals.emplace_back(parse_double(ends[0], "--box"),
                           parse_double(ends[1], "--box"));
  }
  cfg.box_x.assign(intervals.begin(), intervals.begin() + d);
  cfg.box_y.assign(intervals.begin() + d, intervals.end());
}

std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  const char* env = std::getenv("JOHNCHECK_SEED");
  if (env == nullptr || *env == '\0') return 42;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0' || env[0] == '-')
    throw johncheck::InvalidArgument(
        std::string("JOHNCHECK_SEED: cannot parse \"") + env +
        "\" as an unsigned integer");
  return v;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string spec_path;
  int samples = 200;
  std::uint64_t seed = 42;
  bool seed_given = false;
  double tol_sym = 1e-6;
  double tol_psd = 1e-8;
  std::string box;
  std::string out;
  bool percentile = false;
};

int run_check(const CheckArgs& a) {
  const johncheck::RuleSpec spec = johncheck::load_rule_spec(a.spec_path);
  johncheck::CheckConfig cfg;
  cfg.n_samples = a.samples;
  cfg.seed = resolve_seed(a.seed_given, a.seed);
  cfg.tol_sym = a.tol_sym;
  cfg.tol_psd = a.tol_psd;
  cfg.percentile_verdict = a.percentile;
  johncheck::default_box_for(spec, cfg);
  if (!a.box.empty()) apply_box(a.box, spec.dimension(), cfg);

  johncheck::SuiteReport report;
  try {
    report = johncheck::run_diagnostic_suite(spec, cfg);
  } catch (const johncheck::SamplingExhausted& e) {
    // Still a reportable outcome: emit an empty-diagnostics document whose
    // verdict is domain_error rather than dying without a report.
    std::cerr << "johncheck: " << e.what() << "\n";
    report.requested_samples = cfg.n_samples;
    johncheck::aggregate_report(report, cfg);
  }

  const nlohmann::ordered_json doc =
      johncheck::report_to_json(report, cfg, johncheck::rule_kind(spec));
  const std::string text = doc.dump(2) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw johncheck::InvalidArgument("cannot write " + a.out);
    f << text;
  }
  return exit_code_for(report.verdict);
}

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string spec_path;
  std::string x;
  std::string y;
  double lambda = 0.0;
  bool lambda_given = false;
  bool payments = false;
};

int run_eval(const EvalArgs& a) {
  const johncheck::RuleSpec spec = johncheck::load_rule_spec(a.spec_path);
  johncheck::TypeProfile p{parse_coords(a.x, "--x"), parse_coords(a.y, "--y")};

  nlohmann::ordered_json doc;
  if (a.lambda_given) {
    if (a.payments)
      throw johncheck::InvalidArgument(
          "--payments cannot be combined with --lambda");
    const auto* mix = std::get_if<johncheck::FiniteMenuMixture>(&spec.value);
    if (mix == nullptr)
      throw johncheck::InvalidArgument(
          "--lambda requires a finite_menu_mixture spec");
    doc["T"] = johncheck::evaluate_elementary(mix->menu, a.lambda, p);
  } else {
    doc["T"] = johncheck::evaluate_rule(spec, p);
    if (a.payments) {
      const johncheck::RuleFn rule = johncheck::as_rule_fn(spec);
      johncheck::PaymentQuote q1, q2;
      if (std::holds_alternative<johncheck::BuiltinTwoGoodAssignment>(
              spec.value)) {
        q1 = johncheck::payment_agent1(
            rule, p, johncheck::PotentialFn(&johncheck::two_good_potential_1));
        q2 = johncheck::payment_agent2(
            rule, p, johncheck::PotentialFn(&johncheck::two_good_potential_2));
      } else {
        // No closed-form potential: anchor the reconstruction at the origin,
        // so payments are normalized by V(anchor) = 0.
        const johncheck::Vector zero(p.x.size(), 0.0);
        q1 = johncheck::payment_agent1(rule, p, zero);
        q2 = johncheck::payment_agent2(rule, p, zero);
      }
      doc["v1"] = *q1.v1;
      doc["v2"] = *q2.v2;
      doc["pi1"] = *q1.pi1;
      doc["pi2"] = *q2.pi2;
      doc["anchored"] = q1.anchored;
    }
  }
  std::cout << doc.dump() << "\n";
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
  std::string spec_path;
  std::string grid = "5,5";
  std::string box;
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  const johncheck::RuleSpec spec = johncheck::load_rule_spec(a.spec_path);
  const bool constructible =
      std::holds_alternative<johncheck::FiniteMenuMixture>(spec.value) ||
      std::holds_alternative<johncheck::QuadraticFamily>(spec.value);
  if (!constructible)
    throw johncheck::InvalidArgument(
        "construct requires a finite_menu_mixture or quadratic_family spec");

  const std::vector<std::string> toks = split(a.grid, ',');
  if (toks.size() != 2)
    throw johncheck::InvalidArgument("--grid: expected nx,ny");
  const double nx_d = parse_double(toks[0], "--grid");
  const double ny_d = parse_double(toks[1], "--grid");
  const int nx = static_cast<int>(nx_d);
  const int ny = static_cast<int>(ny_d);
  if (nx_d != nx || ny_d != ny || nx < 2 || ny < 2)
    throw johncheck::InvalidArgument("--grid: nx and ny must be integers >= 2");

  const int d = spec.dimension();
  johncheck::CheckConfig cfg;
  johncheck::default_box_for(spec, cfg);
  if (!a.box.empty()) apply_box(a.box, d, cfg);

  const double total_rows = std::pow(nx, d) * std::pow(ny, d);
  if (total_rows > 1e7)
    throw johncheck::InvalidArgument("--grid: " + fmt17(total_rows) +
                                     " rows exceed the 1e7 cap");

  const johncheck::RuleFn rule = johncheck::as_rule_fn(spec);
  std::ofstream f(a.out, std::ios::binary);
  if (!f) throw johncheck::InvalidArgument("cannot write " + a.out);

  std::string header;
  for (int j = 0; j < d; ++j) header += "x" + std::to_string(j + 1) + ",";
  for (int j = 0; j < d; ++j) header += "y" + std::to_string(j + 1) + ",";
  for (int j = 0; j < d; ++j)
    header += "T" + std::to_string(j + 1) + (j + 1 < d ? "," : "");
  f << header << "\n";

  const auto node = [](const std::pair<double, double>& iv, int k, int n) {
    return iv.first + (iv.second - iv.first) * k / (n - 1);
  };

  // Odometer over all 2d grid axes, last axis fastest; x axes use nx nodes,
  // y axes ny nodes.
  std::vector<int> idx(static_cast<std::size_t>(2 * d), 0);
  johncheck::TypeProfile p;
  p.x.resize(static_cast<std::size_t>(d));
  p.y.resize(static_cast<std::size_t>(d));
  for (;;) {
    for (int j = 0; j < d; ++j) p.x[j] = node(cfg.box_x[j], idx[j], nx);
    for (int j = 0; j < d; ++j) p.y[j] = node(cfg.box_y[j], idx[d + j], ny);
    const johncheck::Vector t = rule(p);
    std::string row;
    for (int j = 0; j < d; ++j) row += fmt17(p.x[j]) + ",";
    for (int j = 0; j < d; ++j) row += fmt17(p.y[j]) + ",";
    for (int j = 0; j < d; ++j) row += fmt17(t[j]) + (j + 1 < d ? "," : "");
    f << row << "\n";

    int k = 2 * d - 1;
    while (k >= 0) {
      const int limit = (k < d) ? nx : ny;
      if (++idx[k] < limit) break;
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return kExitPass;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string spec_a;
  std::string spec_b;
  int samples = 1000;
  std::uint64_t seed = 42;
  bool seed_given = false;
  double tol = 1e-9;
};

int run_compare(const CompareArgs& a) {
  const johncheck::RuleSpec spec_a = johncheck::load_rule_spec(a.spec_a);
  const johncheck::RuleSpec spec_b = johncheck::load_rule_spec(a.spec_b);
  if (spec_a.dimension() != spec_b.dimension())
    throw johncheck::InvalidArgument(
        "specs have different dimensions: d=" +
        std::to_string(spec_a.dimension()) + " vs d=" +
        std::to_string(spec_b.dimension()));

  johncheck::CheckConfig cfg;
  cfg.n_samples = a.samples;
  cfg.seed = resolve_seed(a.seed_given, a.seed);
  const bool builtin_a =
      std::holds_alternative<johncheck::BuiltinTwoGoodAssignment>(spec_a.value);
  const bool builtin_b =
      std::holds_alternative<johncheck::BuiltinTwoGoodAssignment>(spec_b.value);
  johncheck::default_box_for(builtin_b && !builtin_a ? spec_b : spec_a, cfg);
  johncheck::DomainPredicate accept;
  if (builtin_a || builtin_b)
    accept = johncheck::two_good_sampling_guard(cfg.margin);

  const std::vector<johncheck::TypeProfile> points =
      johncheck::sample_domain(cfg, accept);
  const johncheck::RuleComparison cmp = johncheck::compare_rules(
      johncheck::as_rule_fn(spec_a), johncheck::as_rule_fn(spec_b), points);
  const bool match = cmp.sup_norm <= a.tol;

  nlohmann::ordered_json doc;
  doc["sup_norm"] = cmp.sup_norm;
  doc["tol"] = a.tol;
  doc["samples"] = a.samples;
  doc["seed"] = cfg.seed;
  doc["argmax_x"] = cmp.argmax_point.x;
  doc["argmax_y"] = cmp.argmax_point.y;
  doc["match"] = match;
  std::cout << doc.dump() << "\n";
  return match ? kExitPass : kExitCompareMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Diagnostics for dominant-strategy implementability of two-agent "
      "allocation rules"};
  app.set_version_flag("--version", std::string(johncheck::kVersion));
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "Sample the domain and test gradient symmetry and convexity");
  check_cmd->add_option("spec", check_args.spec_path, "Rule spec JSON file")
      ->required();
  check_cmd->add_option("--samples", check_args.samples, "Sampled profiles")
      ->check(CLI::PositiveNumber);
  CLI::Option* check_seed =
      check_cmd->add_option("--seed", check_args.seed, "Sampling seed");
  check_cmd->add_option("--tol-sym", check_args.tol_sym,
                        "Relative symmetry-residual tolerance");
  check_cmd->add_option("--tol-psd", check_args.tol_psd,
                        "Relative eigenvalue-floor tolerance");
  check_cmd->add_option(
      "--box", check_args.box,
      "Sampling box: comma-separated lo:hi intervals, d for x then d for y");
  check_cmd->add_option("--out", check_args.out,
                        "Write the JSON report here instead of stdout");
  check_cmd->add_flag("--percentile-verdict", check_args.percentile,
                      "Judge 95th-percentile residuals instead of the worst");

  EvalArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Evaluate a rule at one type profile");
  eval_cmd->add_option("spec", eval_args.spec_path, "Rule spec JSON file")
      ->required();
  eval_cmd->add_option("--x", eval_args.x, "Agent 1 type, comma-separated")
      ->required();
  eval_cmd->add_option("--y", eval_args.y, "Agent 2 type, comma-separated")
      ->required();
  CLI::Option* eval_lambda = eval_cmd->add_option(
      "--lambda", eval_args.lambda,
      "Evaluate the elementary rule for this mixing weight instead");
  eval_cmd->add_flag("--payments", eval_args.payments,
                     "Also print indirect utilities and payments");

  ConstructArgs construct_args;
  CLI::App* construct_cmd = app.add_subcommand(
      "construct", "Tabulate a constructed rule on a grid as CSV");
  construct_cmd
      ->add_option("spec", construct_args.spec_path, "Rule spec JSON file")
      ->required();
  construct_cmd->add_option("--grid", construct_args.grid,
                            "Nodes per x and per y coordinate, as nx,ny");
  construct_cmd->add_option(
      "--box", construct_args.box,
      "Grid box: comma-separated lo:hi intervals, d for x then d for y");
  construct_cmd->add_option("--out", construct_args.out, "Output CSV path")
      ->required();

  CompareArgs compare_args;
  CLI::App* compare_cmd = app.add_subcommand(
      "compare", "Evaluate two rules at sampled profiles and report the gap");
  compare_cmd->add_option("spec_a", compare_args.spec_a, "First rule spec")
      ->required();
  compare_cmd->add_option("spec_b", compare_args.spec_b, "Second rule spec")
      ->required();
  compare_cmd
      ->add_option("--samples", compare_args.samples, "Sampled profiles")
      ->check(CLI::PositiveNumber);
  CLI::Option* compare_seed =
      compare_cmd->add_option("--seed", compare_args.seed, "Sampling seed");
  compare_cmd->add_option("--tol", compare_args.tol,
                          "Sup-norm tolerance for a match");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  check_args.seed_given = check_seed->count() > 0;
  compare_args.seed_given = compare_seed->count() > 0;
  eval_args.lambda_given = eval_lambda->count() > 0;

  try {
    if (check_cmd->parsed()) return run_check(check_args);
    if (eval_cmd->parsed()) return run_eval(eval_args);
    if (construct_cmd->parsed()) return run_construct(construct_args);
    if (compare_cmd->parsed()) return run_compare(compare_args);
  } catch (const johncheck::DomainError& e) {
    std::cerr << "johncheck: domain error: " << e.what() << "\n";
    return kExitDomainError;
  } catch (const johncheck::Error& e) {
    std::cerr << "johncheck: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
