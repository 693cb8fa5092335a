#include "johncheck/checker.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

namespace johncheck {
namespace {

// Uniform double in [0, 1) from the raw 64-bit stream. The top 53 bits scaled
// by 2^-53 give identical values on every platform, unlike
// std::uniform_real_distribution whose algorithm is implementation-defined.
double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void require_box(const std::vector<std::pair<double, double>>& box,
                 const char* label) {
  if (box.empty()) throw InvalidArgument(std::string(label) + " box is empty");
  for (const auto& [lo, hi] : box) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
      throw InvalidArgument(std::string(label) + " box has an invalid interval");
  }
}

double percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace

DomainPredicate two_good_sampling_guard(double margin) {
  return [margin](const TypeProfile& p) {
    return p.x[0] >= p.x[1] + margin && p.y[1] >= p.y[0] + margin;
  };
}

std::vector<TypeProfile> sample_domain(const CheckConfig& cfg,
                                       const DomainPredicate& accept) {
  require_box(cfg.box_x, "x");
  require_box(cfg.box_y, "y");
  if (cfg.n_samples <= 0) throw InvalidArgument("n_samples must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::vector<TypeProfile> points;
  points.reserve(static_cast<std::size_t>(cfg.n_samples));

  const long cap = 100L * cfg.n_samples;
  long draws = 0;
  while (points.size() < static_cast<std::size_t>(cfg.n_samples)) {
    if (draws >= cap)
      throw SamplingExhausted(
          "sampling guard rejected too many draws; enlarge the box or relax "
          "the predicate");
    ++draws;
    TypeProfile p;
    p.x.reserve(cfg.box_x.size());
    p.y.reserve(cfg.box_y.size());
    for (const auto& [lo, hi] : cfg.box_x)
      p.x.push_back(lo + (hi - lo) * next_unit(rng));
    for (const auto& [lo, hi] : cfg.box_y)
      p.y.push_back(lo + (hi - lo) * next_unit(rng));
    if (!accept || accept(p)) points.push_back(std::move(p));
  }
  return points;
}

SymmetryResiduals check_gradient_symmetry(const RuleFn& rule,
                                          const TypeProfile& p,
                                          const CheckConfig& cfg) {
  SymmetryResiduals r;
  r.sym_x = antisymmetry_norm(jacobian_wrt_x(rule, p, cfg.fd));
  r.sym_y = antisymmetry_norm(jacobian_wrt_y(rule, p, cfg.fd));
  return r;
}

EigenFloors check_convexity_psd(const RuleFn& rule, const TypeProfile& p,
                                const CheckConfig& cfg) {
  EigenFloors f;
  const auto ex = symmetric_eigenvalues(symmetrized(jacobian_wrt_x(rule, p, cfg.fd)));
  const auto ey = symmetric_eigenvalues(symmetrized(jacobian_wrt_y(rule, p, cfg.fd)));
  f.min_eig_x = ex.front();
  f.min_eig_y = ey.front();
  return f;
}

double check_john_residual(const PotentialFn& potential, const TypeProfile& p,
                           const CheckConfig& cfg) {
  return antisymmetry_norm(cross_partial_matrix(potential, p, cfg.fd));
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail_symmetry: return "fail_symmetry";
    case Verdict::fail_psd: return "fail_psd";
    case Verdict::domain_error: return "domain_error";
  }
  return "unknown";
}

void aggregate_report(SuiteReport& report, const CheckConfig& cfg) {
  report.worst_sym = 0.0;
  report.worst_min_eig = 0.0;
  report.worst_sym_rel = 0.0;
  report.worst_min_eig_rel = 0.0;
  report.p95_sym_rel = 0.0;
  report.p05_min_eig_rel = 0.0;

  std::vector<double> sym_rel;
  std::vector<double> eig_rel;
  sym_rel.reserve(report.diagnostics.size() * 2);
  eig_rel.reserve(report.diagnostics.size() * 2);

  bool first = true;
  for (const PointDiagnostic& d : report.diagnostics) {
    const double scale_x = std::max(1.0, d.jx_norm);
    const double scale_y = std::max(1.0, d.jy_norm);
    const double sx = d.sym_x / scale_x;
    const double sy = d.sym_y / scale_y;
    const double ex = d.min_eig_x / scale_x;
    const double ey = d.min_eig_y / scale_y;
    sym_rel.push_back(sx);
    sym_rel.push_back(sy);
    eig_rel.push_back(ex);
    eig_rel.push_back(ey);

    report.worst_sym = std::max(report.worst_sym, std::max(d.sym_x, d.sym_y));
    report.worst_sym_rel = std::max(report.worst_sym_rel, std::max(sx, sy));
    const double raw_floor = std::min(d.min_eig_x, d.min_eig_y);
    const double rel_floor = std::min(ex, ey);
    if (first) {
      report.worst_min_eig = raw_floor;
      report.worst_min_eig_rel = rel_floor;
      first = false;
    } else {
      report.worst_min_eig = std::min(report.worst_min_eig, raw_floor);
      report.worst_min_eig_rel = std::min(report.worst_min_eig_rel, rel_floor);
    }
  }
  report.p95_sym_rel = percentile(sym_rel, 0.95);
  report.p05_min_eig_rel = percentile(eig_rel, 0.05);

  // Verdict priority: a rule whose own domain rejects too many probe points
  // is reported as a domain problem before any numeric judgement; symmetry
  // failure outranks PSD failure because a nonsymmetric Jacobian is not a
  // Hessian at all.
  const double sym_stat =
      cfg.percentile_verdict ? report.p95_sym_rel : report.worst_sym_rel;
  const double eig_stat =
      cfg.percentile_verdict ? report.p05_min_eig_rel : report.worst_min_eig_rel;

  if (report.requested_samples > 0 &&
      report.domain_errors * 10 > report.requested_samples) {
    report.verdict = Verdict::domain_error;
  } else if (report.diagnostics.empty()) {
    report.verdict = Verdict::domain_error;
  } else if (sym_stat > cfg.tol_sym) {
    report.verdict = Verdict::fail_symmetry;
  } else if (eig_stat < -cfg.tol_psd) {
    report.verdict = Verdict::fail_psd;
  } else {
    report.verdict = Verdict::pass;
  }
}

SuiteReport run_diagnostic_suite(const RuleFn& rule, const CheckConfig& cfg,
                                 const DomainPredicate& accept,
                                 const PotentialFn& john_potential) {
  SuiteReport report;
  report.requested_samples = cfg.n_samples;
  const std::vector<TypeProfile> points = sample_domain(cfg, accept);

  for (const TypeProfile& p : points) {
    PointDiagnostic d;
    d.point = p;
    try {
      const SquareMatrix jx = jacobian_wrt_x(rule, p, cfg.fd);
      const SquareMatrix jy = jacobian_wrt_y(rule, p, cfg.fd);
      d.jx_norm = frobenius_norm(jx);
      d.jy_norm = frobenius_norm(jy);
      d.sym_x = antisymmetry_norm(jx);
      d.sym_y = antisymmetry_norm(jy);
      d.min_eig_x = symmetric_eigenvalues(symmetrized(jx)).front();
      d.min_eig_y = symmetric_eigenvalues(symmetrized(jy)).front();
      if (john_potential)
        d.john_residual = check_john_residual(john_potential, p, cfg);
    } catch (const DomainError&) {
      ++report.domain_errors;
      continue;  // stencil left the rule's domain; the point carries no data
    }
    report.diagnostics.push_back(std::move(d));
  }

  aggregate_report(report, cfg);
  return report;
}

SuiteReport run_diagnostic_suite(const RuleSpec& spec, const CheckConfig& cfg) {
  const RuleFn rule = as_rule_fn(spec);
  DomainPredicate accept;
  PotentialFn potential;
  if (std::holds_alternative<BuiltinTwoGoodAssignment>(spec.value)) {
    accept = two_good_sampling_guard(cfg.margin);
    potential = [](const TypeProfile& p) { return two_good_potential_1(p); };
  }
  return run_diagnostic_suite(rule, cfg, accept, potential);
}

void default_box_for(const RuleSpec& spec, CheckConfig& cfg) {
  if (std::holds_alternative<BuiltinTwoGoodAssignment>(spec.value)) {
    cfg.box_x = {{1.5, 3.0}, {0.0, 1.4}};
    cfg.box_y = {{0.0, 1.4}, {1.5, 3.0}};
    return;
  }
  const int d = spec.dimension();
  cfg.box_x.assign(static_cast<std::size_t>(d), {-1.0, 1.0});
  cfg.box_y.assign(static_cast<std::size_t>(d), {-1.0, 1.0});
}

}  // namespace johncheck
