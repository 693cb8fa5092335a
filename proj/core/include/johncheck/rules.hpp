#pragma once

#include <functional>
#include <string>
#include <vector>

#include "johncheck/types.hpp"

namespace johncheck {

/// Callable allocation rule T(x,y) -> z. Implementations must be pure
/// (side-effect free) so callers may evaluate them concurrently.
using RuleFn = std::function<Vector(const TypeProfile&)>;

/// Scalar field on type profiles (a candidate potential V(x,y)).
using PotentialFn = std::function<double(const TypeProfile&)>;

// The builtin's domain guard: evaluation requires the denominator
// D = x1-x2+y2-y1 to stay at least this far from zero.
inline constexpr double kTwoGoodMinGap = 1e-9;

/// Evaluates a rule spec at a profile. Throws DomainError when the builtin's
/// constraints (x1 > x2, y1 < y2, D >= kTwoGoodMinGap) fail, and
/// DimensionMismatch on shape errors.
Vector evaluate_rule(const RuleSpec& spec, const TypeProfile& p);

/// Wraps a spec as a callable rule.
RuleFn as_rule_fn(const RuleSpec& spec);

/// Elementary rule for one lambda: the argmax over menu outcomes of
/// (lambda*x + (1-lambda)*y).z - cost. Exact ties go to the lowest outcome
/// index.
Vector evaluate_elementary(const Menu& menu, double lambda,
                           const TypeProfile& p);

// -- builtin two-good assignment closed forms ---------------------------------

/// D = x1-x2+y2-y1 after validating the domain constraints; throws
/// DomainError outside x1 > x2, y1 < y2, D >= kTwoGoodMinGap.
double two_good_gap(const TypeProfile& p);
Vector two_good_allocation(const TypeProfile& p);
/// Agent-1 indirect utility x1 - (y2-y1) log D.
double two_good_potential_1(const TypeProfile& p);
/// Agent-2 indirect utility y2 - (x1-x2) log D.
double two_good_potential_2(const TypeProfile& p);
/// The menu ({(1,0), cost 0}, {(0,1), cost 0}) whose uniform mixture
/// reproduces the builtin closed form.
Menu two_good_menu();

// -- catalog ------------------------------------------------------------------

struct CatalogEntry {
  std::string name;
  RuleSpec spec;
};

/// Named rule specs shipped with the tool: the two-good assignment plus the
/// rotation / negative-definite counterexamples.
const std::vector<CatalogEntry>& builtin_catalog();

/// Catalog lookup; nullptr when the name is unknown.
const RuleSpec* find_builtin(const std::string& name);

// -- validation ---------------------------------------------------------------

struct ValidationIssue {
  std::string field;    // dotted path, e.g. "lambda_measure.atoms"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks every structural invariant of a spec (weight sums, menu duplicates,
/// PSD of the quadratic hessian, matrix shapes). Violations are returned,
/// never thrown.
ValidationReport validate_spec(const RuleSpec& spec);

}  // namespace johncheck
