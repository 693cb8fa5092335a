#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "johncheck/calculus.hpp"
#include "johncheck/rules.hpp"
#include "johncheck/types.hpp"

namespace johncheck {

/// Sampling box, tolerances, and finite-difference settings for a diagnostic
/// run. Residual tolerances are relative: each point's thresholds scale with
/// max(1, ||J||_F) of that point's Jacobian.
struct CheckConfig {
  std::vector<std::pair<double, double>> box_x;  // per-coordinate (lo, hi)
  std::vector<std::pair<double, double>> box_y;
  int n_samples = 200;
  std::uint64_t seed = 42;
  FDConfig fd;
  double tol_sym = 1e-6;
  double tol_psd = 1e-8;
  double margin = 0.1;  // builtin sampling guard: x1 >= x2+margin, y2 >= y1+margin
  bool percentile_verdict = false;  // judge the 95th percentile, not the max
};

using DomainPredicate = std::function<bool(const TypeProfile&)>;

/// Acceptance predicate used when sampling around the builtin rule.
DomainPredicate two_good_sampling_guard(double margin);

/// n_samples points drawn uniformly from the box, deterministically from the
/// seed. Draws failing `accept` are rejected and redrawn; throws
/// SamplingExhausted once 100 * n_samples draws yielded fewer than n_samples
/// acceptances.
std::vector<TypeProfile> sample_domain(const CheckConfig& cfg,
                                       const DomainPredicate& accept = {});

/// Frobenius norms of the antisymmetric parts of both Jacobians of T at p.
/// Zero for implementable smooth rules (both Jacobians are Hessians).
struct SymmetryResiduals {
  double sym_x = 0.0;
  double sym_y = 0.0;
};
SymmetryResiduals check_gradient_symmetry(const RuleFn& rule,
                                          const TypeProfile& p,
                                          const CheckConfig& cfg);

/// Minimum eigenvalues of the symmetrized Jacobians; nonnegative for
/// implementable rules (convexity of the potentials).
struct EigenFloors {
  double min_eig_x = 0.0;
  double min_eig_y = 0.0;
};
EigenFloors check_convexity_psd(const RuleFn& rule, const TypeProfile& p,
                                const CheckConfig& cfg);

/// ||C - C^T||_F for C the mixed-partial matrix of the potential at p: the
/// residual of the ultrahyperbolic mixed-symmetry condition.
double check_john_residual(const PotentialFn& potential, const TypeProfile& p,
                           const CheckConfig& cfg);

struct PointDiagnostic {
  TypeProfile point;
  double sym_x = 0.0;
  double sym_y = 0.0;
  double min_eig_x = 0.0;
  double min_eig_y = 0.0;
  double jx_norm = 0.0;  // ||J_x||_F, the residual scale at this point
  double jy_norm = 0.0;
  std::optional<double> john_residual;  // set when a potential is available
};

enum class Verdict { pass, fail_symmetry, fail_psd, domain_error };
std::string to_string(Verdict v);

struct SuiteReport {
  std::vector<PointDiagnostic> diagnostics;
  int requested_samples = 0;
  int domain_errors = 0;

  // Raw extremes over all points and both Jacobians.
  double worst_sym = 0.0;
  double worst_min_eig = 0.0;
  // The same extremes scaled per point by max(1, ||J||_F); these drive the
  // verdict.
  double worst_sym_rel = 0.0;
  double worst_min_eig_rel = 0.0;
  // Tail statistics for piecewise-smooth rules whose stencils may straddle a
  // kink at isolated points.
  double p95_sym_rel = 0.0;
  double p05_min_eig_rel = 0.0;

  Verdict verdict = Verdict::pass;
};

/// Recomputes every summary field and the verdict from the stored
/// diagnostics. `run_diagnostic_suite` ends with exactly this call, so
/// re-aggregating a stored report reproduces its verdict.
void aggregate_report(SuiteReport& report, const CheckConfig& cfg);

/// Samples the box and runs the symmetry and PSD checks at every point.
/// Pass means no violation of the necessary conditions was found on the
/// sampled set; it is not a proof of implementability.
SuiteReport run_diagnostic_suite(const RuleFn& rule, const CheckConfig& cfg,
                                 const DomainPredicate& accept = {},
                                 const PotentialFn& john_potential = {});

/// Spec-level entry point: wires in the builtin's sampling guard and its
/// closed-form potential for the john residual column.
SuiteReport run_diagnostic_suite(const RuleSpec& spec, const CheckConfig& cfg);

/// Default sampling box for a spec: the guarded assignment box for the
/// builtin, [-1,1] per coordinate otherwise.
void default_box_for(const RuleSpec& spec, CheckConfig& cfg);

}  // namespace johncheck
