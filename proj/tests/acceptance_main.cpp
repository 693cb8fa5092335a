// Acceptance gate: end-to-end checks of the published numerical claims, each
// with its stated tolerance and runtime budget. One line per criterion;
// nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "johncheck/calculus.hpp"
#include "johncheck/checker.hpp"
#include "johncheck/envelope.hpp"
#include "johncheck/potential.hpp"
#include "johncheck/rules.hpp"
#include "johncheck/types.hpp"

using namespace johncheck;

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

Menu example_menu() {
  return Menu{{Outcome{{1.0, 0.0}, 0.0}, Outcome{{0.0, 1.0}, 0.0}}};
}

CheckConfig guarded_config(int samples, std::uint64_t seed = 42) {
  CheckConfig cfg;
  cfg.box_x = {{1.5, 3.0}, {0.0, 1.4}};
  cfg.box_y = {{0.0, 1.4}, {1.5, 3.0}};
  cfg.n_samples = samples;
  cfg.seed = seed;
  return cfg;
}

std::vector<TypeProfile> guarded_points(int n, std::uint64_t seed = 42) {
  const CheckConfig cfg = guarded_config(n, seed);
  return sample_domain(cfg, two_good_sampling_guard(cfg.margin));
}

// 1. The uniform mixture over the two-outcome menu reproduces the
//    closed-form assignment rule to quadrature-free precision.
bool mixture_reproduces_closed_form(std::string& detail) {
  const Menu menu = example_menu();
  double sup = 0.0;
  for (const TypeProfile& p : guarded_points(1000)) {
    const Vector a = two_good_allocation(p);
    const Vector b = integrate_uniform_mixture(menu, p);
    for (std::size_t i = 0; i < a.size(); ++i)
      sup = std::max(sup, std::abs(a[i] - b[i]));
  }
  detail = fmt("sup=%.3g tol=1e-12", sup);
  return sup <= 1e-12;
}

// 2. The sampled diagnostic suite passes the smooth assignment rule.
bool diagnostic_suite_passes(std::string& detail) {
  RuleSpec spec;
  spec.value = BuiltinTwoGoodAssignment{};
  const SuiteReport r = run_diagnostic_suite(spec, guarded_config(200));
  detail = fmt("worst_sym_rel=%.3g worst_min_eig_rel=%.3g", r.worst_sym_rel,
               r.worst_min_eig_rel);
  return r.verdict == Verdict::pass && r.worst_sym_rel <= 1e-6 &&
         r.worst_min_eig_rel >= -1e-8 && r.diagnostics.size() == 200;
}

// 3. Both counterexamples are rejected for the right reason, with the
//    analytically known residuals at every sampled point.
bool counterexamples_rejected(std::string& detail) {
  CheckConfig cfg;
  cfg.box_x = {{-1.0, 1.0}, {-1.0, 1.0}};
  cfg.box_y = {{-1.0, 1.0}, {-1.0, 1.0}};
  cfg.n_samples = 100;

  const SuiteReport rot =
      run_diagnostic_suite(*find_builtin("rotation_counterexample"), cfg);
  const SuiteReport neg =
      run_diagnostic_suite(*find_builtin("negdef_counterexample"), cfg);

  const double expected_sym = 2.8284271247461903;  // 2 sqrt 2
  double sym_err = 0.0;
  for (const PointDiagnostic& d : rot.diagnostics)
    sym_err = std::max(sym_err, std::abs(d.sym_x - expected_sym));
  double eig_err = 0.0;
  for (const PointDiagnostic& d : neg.diagnostics) {
    eig_err = std::max(eig_err, std::abs(d.min_eig_x + 1.0));
    eig_err = std::max(eig_err, std::abs(d.min_eig_y + 1.0));
  }
  detail = fmt("sym_err=%.3g eig_err=%.3g", sym_err, eig_err);
  return rot.verdict == Verdict::fail_symmetry &&
         neg.verdict == Verdict::fail_psd && sym_err <= 1e-6 &&
         eig_err <= 1e-6;
}

// 4. Mixed partials of the agent-1 potential equal the y-jacobian of the
//    rule entrywise, and are symmetric across the diagonal.
bool mixed_partials_match(std::string& detail) {
  const RuleFn rule = [](const TypeProfile& p) { return two_good_allocation(p); };
  const PotentialFn v1 = [](const TypeProfile& p) {
    return two_good_potential_1(p);
  };
  double entry_err = 0.0;
  double antisym = 0.0;
  for (const TypeProfile& p : guarded_points(50)) {
    const SquareMatrix c = cross_partial_matrix(v1, p);
    const SquareMatrix jy = jacobian_wrt_y(rule, p);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        entry_err = std::max(entry_err, std::abs(c(i, j) - jy(i, j)));
    antisym = std::max(antisym, antisymmetry_norm(c));
  }
  detail = fmt("entry_err=%.3g antisym=%.3g", entry_err, antisym);
  return entry_err <= 2e-5 && antisym <= 1e-5;
}

// 5. Line-integral reconstruction reproduces the closed-form potential
//    differences.
bool potential_differences(std::string& detail) {
  const RuleFn rule = [](const TypeProfile& p) { return two_good_allocation(p); };
  const TypeProfile ref{{2.0, 1.0}, {0.0, 3.0}};
  const double d1 = reconstruct_potential_1(rule, ref, {1.0, 1.0});
  const double d2 = reconstruct_potential_2(rule, ref, {0.0, 2.0});
  const double e1 = std::abs(d1 - 0.13695378264465721);  // 1 - 3 log(4/3)
  const double e2 = std::abs(d2 - 0.7123179275482191);   // 1 - log(4/3)
  detail = fmt("err1=%.3g err2=%.3g", e1, e2);
  return e1 <= 1e-8 && e2 <= 1e-8;
}

// 6. Taxation-principle payments from the closed-form potentials.
bool closed_form_payments(std::string& detail) {
  const RuleFn rule = [](const TypeProfile& p) { return two_good_allocation(p); };
  const TypeProfile ref{{2.0, 1.0}, {0.0, 3.0}};
  const PaymentQuote q1 =
      payment_agent1(rule, ref, PotentialFn(&two_good_potential_1));
  const PaymentQuote q2 =
      payment_agent2(rule, ref, PotentialFn(&two_good_potential_2));
  const double e1 = std::abs(*q1.pi1 - 3.4088830833596719);  // -3/4 + 3 log 4
  const double e2 = std::abs(*q2.pi2 - 0.63629436111989057);  // -3/4 + log 4
  detail = fmt("err1=%.3g err2=%.3g", e1, e2);
  return e1 <= 1e-9 && e2 <= 1e-9;
}

// 7. Under (T, pi1), truthful reporting maximizes agent 1's utility over a
//    21x21 misreport grid at 50 sampled profiles.
bool truthful_reporting_optimal(std::string& detail) {
  const auto pi1 = [](const TypeProfile& p) {
    const Vector t = two_good_allocation(p);
    return p.x[0] * t[0] + p.x[1] * t[1] - two_good_potential_1(p);
  };
  const std::pair<double, double> bx1{1.5, 3.0};
  const std::pair<double, double> bx2{0.0, 1.4};
  double max_gain = -1e300;
  for (const TypeProfile& p : guarded_points(50)) {
    const Vector t_true = two_good_allocation(p);
    const double u_true =
        p.x[0] * t_true[0] + p.x[1] * t_true[1] - pi1(p);
    for (int i = 0; i < 21; ++i) {
      for (int j = 0; j < 21; ++j) {
        TypeProfile lie = p;
        lie.x[0] = bx1.first + (bx1.second - bx1.first) * i / 20.0;
        lie.x[1] = bx2.first + (bx2.second - bx2.first) * j / 20.0;
        if (lie.x[0] - lie.x[1] < 1e-6) continue;  // infeasible report
        const Vector t_lie = two_good_allocation(lie);
        const double u_lie =
            p.x[0] * t_lie[0] + p.x[1] * t_lie[1] - pi1(lie);
        max_gain = std::max(max_gain, u_lie - u_true);
      }
    }
  }
  detail = fmt("max_gain=%.3g", max_gain);
  return max_gain <= 1e-9;
}

// 8. Numerical jacobians of the quadratic family match the analytic ones.
bool quadratic_jacobians(std::string& detail) {
  SquareMatrix a(2);
  a(0, 0) = 2.0; a(0, 1) = 1.0; a(1, 0) = 1.0; a(1, 1) = 2.0;
  RuleSpec spec;
  spec.value = QuadraticFamily{a, {0.0, 0.0}, LambdaMeasure::uniform()};
  const RuleFn rule = as_rule_fn(spec);

  // Uniform measure has mean 1/2, so both analytic jacobians are A/2.
  SquareMatrix half(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) half(i, j) = 0.5 * a(i, j);
  const double scale = std::max(1.0, frobenius_norm(half));

  CheckConfig cfg;
  cfg.box_x = {{-1.0, 1.0}, {-1.0, 1.0}};
  cfg.box_y = {{-1.0, 1.0}, {-1.0, 1.0}};
  cfg.n_samples = 100;
  double rel = 0.0;
  for (const TypeProfile& p : sample_domain(cfg)) {
    const SquareMatrix jx = jacobian_wrt_x(rule, p);
    const SquareMatrix jy = jacobian_wrt_y(rule, p);
    double err = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        err = std::max(err, std::abs(jx(i, j) - half(i, j)));
        err = std::max(err, std::abs(jy(i, j) - half(i, j)));
      }
    rel = std::max(rel, err / scale);
  }
  detail = fmt("rel=%.3g tol=1e-8", rel);
  return rel <= 1e-8;
}

// 9. Monte Carlo over lambda agrees with the exact envelope integral: the
//    mixture really is "draw lambda, then run the elementary rule".
bool monte_carlo_mixture(std::string& detail) {
  const Menu menu = example_menu();
  const int draws = 1000000;
  double worst = 0.0;
  std::mt19937_64 rng(12345);
  for (const TypeProfile& p : guarded_points(5, 7)) {
    const Vector exact = integrate_uniform_mixture(menu, p);
    Vector avg(2, 0.0);
    for (int k = 0; k < draws; ++k) {
      const double lambda = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      const Vector z = evaluate_elementary(menu, lambda, p);
      avg[0] += z[0];
      avg[1] += z[1];
    }
    avg[0] /= draws;
    avg[1] /= draws;
    worst = std::max(worst, std::abs(avg[0] - exact[0]));
    worst = std::max(worst, std::abs(avg[1] - exact[1]));
  }
  detail = fmt("max_dev=%.3g tol=3e-3", worst);
  return worst <= 3e-3;
}

struct Criterion {
  const char* name;
  bool (*run)(std::string&);
  double budget_seconds;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"mixture reproduces closed form", mixture_reproduces_closed_form, 1.0},
      {"diagnostic suite passes smooth rule", diagnostic_suite_passes, 5.0},
      {"counterexamples rejected", counterexamples_rejected, 5.0},
      {"mixed partials match y-jacobian", mixed_partials_match, 5.0},
      {"potential reconstruction", potential_differences, 5.0},
      {"closed-form payments", closed_form_payments, 5.0},
      {"truthful reporting optimal", truthful_reporting_optimal, 10.0},
      {"quadratic jacobians match analytic", quadratic_jacobians, 5.0},
      {"monte carlo mixture average", monte_carlo_mixture, 10.0},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (secs > c.budget_seconds) {
      ok = false;
      detail += fmt(" (over %gs budget)", c.budget_seconds);
    }
    std::printf("[%s] %-36s %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.name,
                detail.c_str(), secs);
    if (!ok) ++failed;
  }
  if (failed > 0) std::printf("%d criterion(s) failed\n", failed);
  return failed == 0 ? 0 : 1;
}
