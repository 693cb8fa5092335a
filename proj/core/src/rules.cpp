#include "johncheck/rules.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <utility>

#include "johncheck/calculus.hpp"
#include "johncheck/envelope.hpp"

namespace johncheck {

namespace {

std::string fmt_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

Vector evaluate_quadratic(const QuadraticFamily& q, const TypeProfile& p) {
  require_profile_dimension(p, q.hessian.size(), "evaluate_rule");
  // T_lambda = H(lambda x + (1-lambda) y) + b is affine in lambda, so the
  // mixture collapses to the measure mean.
  const double lm = q.measure.mean();
  Vector w(p.x.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = lm * p.x[i] + (1.0 - lm) * p.y[i];
  Vector out = multiply(q.hessian, w);
  if (q.offset.size() != out.size())
    throw DimensionMismatch("evaluate_rule: offset length");
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += q.offset[i];
  return out;
}

Vector evaluate_linear(const LinearRule& r, const TypeProfile& p) {
  require_profile_dimension(p, r.mat_x.size(), "evaluate_rule");
  Vector out = multiply(r.mat_x, p.x);
  const Vector oy = multiply(r.mat_y, p.y);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += oy[i];
  return out;
}

}  // namespace

double two_good_gap(const TypeProfile& p) {
  require_profile_dimension(p, 2, "two_good");
  if (!(p.x[0] > p.x[1]))
    throw DomainError("two_good: requires x1 > x2 (got x1=" + fmt_g(p.x[0]) +
                      ", x2=" + fmt_g(p.x[1]) + ")");
  if (!(p.y[0] < p.y[1]))
    throw DomainError("two_good: requires y1 < y2 (got y1=" + fmt_g(p.y[0]) +
                      ", y2=" + fmt_g(p.y[1]) + ")");
  const double gap = (p.x[0] - p.x[1]) + (p.y[1] - p.y[0]);
  if (!(gap >= kTwoGoodMinGap))
    throw DomainError("two_good: denominator " + fmt_g(gap) + " below " +
                      fmt_g(kTwoGoodMinGap));
  return gap;
}

Vector two_good_allocation(const TypeProfile& p) {
  const double gap = two_good_gap(p);
  return {(p.x[0] - p.x[1]) / gap, (p.y[1] - p.y[0]) / gap};
}

double two_good_potential_1(const TypeProfile& p) {
  const double gap = two_good_gap(p);
  return p.x[0] - (p.y[1] - p.y[0]) * std::log(gap);
}

double two_good_potential_2(const TypeProfile& p) {
  const double gap = two_good_gap(p);
  return p.y[1] - (p.x[0] - p.x[1]) * std::log(gap);
}

Menu two_good_menu() {
  Menu m;
  m.outcomes.push_back({{1.0, 0.0}, 0.0});  // direct assignment
  m.outcomes.push_back({{0.0, 1.0}, 0.0});  // reverse assignment
  return m;
}

Vector evaluate_rule(const RuleSpec& spec, const TypeProfile& p) {
  struct Visitor {
    const TypeProfile& p;
    Vector operator()(const BuiltinTwoGoodAssignment&) const {
      return two_good_allocation(p);
    }
    Vector operator()(const FiniteMenuMixture& r) const {
      if (r.measure.kind == LambdaMeasure::Kind::uniform_on_01)
        return integrate_uniform_mixture(r.menu, p);
      return integrate_discrete_mixture(r.menu, r.measure, p);
    }
    Vector operator()(const QuadraticFamily& r) const {
      return evaluate_quadratic(r, p);
    }
    Vector operator()(const LinearRule& r) const {
      return evaluate_linear(r, p);
    }
  };
  return std::visit(Visitor{p}, spec.value);
}

RuleFn as_rule_fn(const RuleSpec& spec) {
  return [spec](const TypeProfile& p) { return evaluate_rule(spec, p); };
}

Vector evaluate_elementary(const Menu& menu, double lambda,
                           const TypeProfile& p) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw InvalidArgument("evaluate_elementary: lambda " + fmt_g(lambda) +
                          " outside [0,1]");
  if (menu.outcomes.empty())
    throw InvalidArgument("evaluate_elementary: empty menu");
  require_profile_dimension(p, menu.dimension(), "evaluate_elementary");

  Vector w(p.x.size());
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = lambda * p.x[i] + (1.0 - lambda) * p.y[i];

  std::size_t best = 0;
  double best_value = dot(w, menu.outcomes[0].z) - menu.outcomes[0].cost;
  for (std::size_t k = 1; k < menu.outcomes.size(); ++k) {
    if (menu.outcomes[k].z.size() != w.size())
      throw DimensionMismatch("evaluate_elementary: outcome dimension");
    const double v = dot(w, menu.outcomes[k].z) - menu.outcomes[k].cost;
    if (v > best_value) {  // strict: ties stay with the lowest index
      best_value = v;
      best = k;
    }
  }
  return menu.outcomes[best].z;
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> out;
    out.push_back({"two_good_assignment", RuleSpec{BuiltinTwoGoodAssignment{}}});

    LinearRule rotation;
    rotation.mat_x = SquareMatrix(2);
    rotation.mat_x(0, 1) = 1.0;
    rotation.mat_x(1, 0) = -1.0;
    rotation.mat_y = SquareMatrix(2);
    out.push_back({"rotation_counterexample", RuleSpec{rotation}});

    LinearRule negdef;
    negdef.mat_x = SquareMatrix(2);
    negdef.mat_y = SquareMatrix(2);
    for (int i = 0; i < 2; ++i) {
      negdef.mat_x(i, i) = -1.0;
      negdef.mat_y(i, i) = -1.0;
    }
    out.push_back({"negdef_counterexample", RuleSpec{negdef}});
    return out;
  }();
  return catalog;
}

const RuleSpec* find_builtin(const std::string& name) {
  for (const CatalogEntry& e : builtin_catalog())
    if (e.name == name) return &e.spec;
  return nullptr;
}

namespace {

void validate_measure(const LambdaMeasure& m, const std::string& field,
                      std::vector<ValidationIssue>& issues) {
  if (m.kind == LambdaMeasure::Kind::uniform_on_01) {
    if (!m.atoms.empty())
      issues.push_back({field, "uniform measure carries atoms"});
    return;
  }
  if (m.atoms.empty()) {
    issues.push_back({field, "discrete measure needs at least one atom"});
    return;
  }
  double sum = 0.0;
  std::set<double> seen;
  for (std::size_t k = 0; k < m.atoms.size(); ++k) {
    const auto& a = m.atoms[k];
    const std::string at = field + ".atoms[" + std::to_string(k) + "]";
    if (!(a.lambda >= 0.0 && a.lambda <= 1.0))
      issues.push_back({at, "lambda " + fmt_g(a.lambda) + " outside [0,1]"});
    if (!(a.weight > 0.0))
      issues.push_back({at, "weight " + fmt_g(a.weight) + " not positive"});
    if (!seen.insert(a.lambda).second)
      issues.push_back({at, "duplicate lambda " + fmt_g(a.lambda)});
    sum += a.weight;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    issues.push_back({field, "weights sum " + fmt_g(sum) + " != 1"});
}

void validate_menu(const Menu& menu, const std::string& field,
                   std::vector<ValidationIssue>& issues) {
  if (menu.outcomes.empty()) {
    issues.push_back({field, "empty menu"});
    return;
  }
  const std::size_t d = menu.outcomes.front().z.size();
  if (d == 0) issues.push_back({field, "zero-dimensional outcomes"});
  for (std::size_t k = 0; k < menu.outcomes.size(); ++k) {
    const auto& o = menu.outcomes[k];
    const std::string at = field + ".outcomes[" + std::to_string(k) + "]";
    if (o.z.size() != d)
      issues.push_back({at, "dimension " + std::to_string(o.z.size()) +
                                " != " + std::to_string(d)});
    if (!all_finite(o.z) || !std::isfinite(o.cost))
      issues.push_back({at, "non-finite entry"});
    for (std::size_t j = 0; j < k; ++j) {
      if (menu.outcomes[j].z == o.z && menu.outcomes[j].cost == o.cost) {
        issues.push_back({at, "duplicates outcome " + std::to_string(j)});
        break;
      }
    }
  }
}

}  // namespace

ValidationReport validate_spec(const RuleSpec& spec) {
  ValidationReport report;
  auto& issues = report.issues;

  struct Visitor {
    std::vector<ValidationIssue>& issues;

    void operator()(const BuiltinTwoGoodAssignment&) const {}

    void operator()(const FiniteMenuMixture& r) const {
      validate_menu(r.menu, "outcomes", issues);
      validate_measure(r.measure, "lambda_measure", issues);
    }

    void operator()(const QuadraticFamily& r) const {
      const int n = r.hessian.size();
      if (n == 0) issues.push_back({"A", "empty matrix"});
      if (!all_finite(r.hessian)) issues.push_back({"A", "non-finite entry"});
      bool symmetric = true;
      for (int i = 0; i < n && symmetric; ++i)
        for (int j = i + 1; j < n; ++j)
          if (r.hessian(i, j) != r.hessian(j, i)) {
            issues.push_back({"A", "not symmetric at (" + std::to_string(i) +
                                       "," + std::to_string(j) + ")"});
            symmetric = false;
            break;
          }
      if (symmetric && n > 0 && all_finite(r.hessian)) {
        const auto eigs = symmetric_eigenvalues(r.hessian);
        // slack for eigensolver roundoff only
        const double tol = 1e-12 * std::max(1.0, frobenius_norm(r.hessian));
        if (eigs.front() < -tol)
          issues.push_back(
              {"A", "A not PSD (min eig " + fmt_g(eigs.front()) + ")"});
      }
      if (static_cast<int>(r.offset.size()) != n)
        issues.push_back({"b", "length " + std::to_string(r.offset.size()) +
                                   " != " + std::to_string(n)});
      else if (!all_finite(r.offset))
        issues.push_back({"b", "non-finite entry"});
      validate_measure(r.measure, "lambda_measure", issues);
    }

    void operator()(const LinearRule& r) const {
      if (r.mat_x.size() == 0) issues.push_back({"Mx", "empty matrix"});
      if (r.mat_y.size() != r.mat_x.size())
        issues.push_back({"My", "size " + std::to_string(r.mat_y.size()) +
                                    " != " + std::to_string(r.mat_x.size())});
      if (!all_finite(r.mat_x)) issues.push_back({"Mx", "non-finite entry"});
      if (!all_finite(r.mat_y)) issues.push_back({"My", "non-finite entry"});
    }
  };

  std::visit(Visitor{issues}, spec.value);
  return report;
}

}  // namespace johncheck
