#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "johncheck/calculus.hpp"
#include "johncheck/rules.hpp"
#include "johncheck/types.hpp"

namespace johncheck {

/// V1(x,y) - V1(anchor_x,y): the line integral of T along the straight
/// segment from (anchor_x, y) to (x, y). Path-independent exactly when J_x is
/// symmetric; for other rules the value depends on this choice of path.
double reconstruct_potential_1(const RuleFn& rule, const TypeProfile& p,
                               const Vector& anchor_x, int n_panels = 64);

/// V2(x,y) - V2(x,anchor_y): same construction varying y.
double reconstruct_potential_2(const RuleFn& rule, const TypeProfile& p,
                               const Vector& anchor_y, int n_panels = 64);

/// Same endpoints, but integrating axis by axis (coordinate 0 first). Agrees
/// with the straight segment within quadrature error iff the field is
/// conservative; the disagreement is a cheap symmetry diagnostic.
double reconstruct_potential_1_staircase(const RuleFn& rule,
                                         const TypeProfile& p,
                                         const Vector& anchor_x,
                                         int n_panels = 64);
double reconstruct_potential_2_staircase(const RuleFn& rule,
                                         const TypeProfile& p,
                                         const Vector& anchor_y,
                                         int n_panels = 64);

/// Reconstructed potential as a reusable scalar field, zero at the anchor
/// coordinate by convention.
struct PotentialField {
  RuleFn rule;
  int agent = 1;  // 1: integrate in x, 2: integrate in y
  Vector anchor;
  int n_panels = 64;

  double operator()(const TypeProfile& p) const;
};

/// Allocation plus indirect utilities and taxation-principle payments at one
/// profile. Only the fields produced by the originating call are populated;
/// `anchored` records that potentials (hence payments) are normalized to
/// vanish at an anchor rather than taken from a closed form.
struct PaymentQuote {
  TypeProfile point;
  Vector allocation;
  std::optional<double> v1;
  std::optional<double> v2;
  std::optional<double> pi1;
  std::optional<double> pi2;
  bool anchored = false;
};

/// pi1 = x^T T(x,y) - V1(x,y) with V1 given in closed form.
PaymentQuote payment_agent1(const RuleFn& rule, const TypeProfile& p,
                            const PotentialFn& closed_form_v1);
/// Same with V1 reconstructed from the anchor; pi1 is then determined only up
/// to an additive function of y, which leaves agent 1's incentives unchanged.
PaymentQuote payment_agent1(const RuleFn& rule, const TypeProfile& p,
                            const Vector& anchor_x, int n_panels = 64);

PaymentQuote payment_agent2(const RuleFn& rule, const TypeProfile& p,
                            const PotentialFn& closed_form_v2);
PaymentQuote payment_agent2(const RuleFn& rule, const TypeProfile& p,
                            const Vector& anchor_y, int n_panels = 64);

struct RuleComparison {
  double sup_norm = 0.0;  // max over points of ||T_a - T_b||_inf
  std::size_t argmax_index = 0;
  TypeProfile argmax_point;
};

/// Evaluates both rules at every point and reports the largest coordinatewise
/// deviation and where it occurs. Throws InvalidArgument on an empty sequence.
RuleComparison compare_rules(const RuleFn& rule_a, const RuleFn& rule_b,
                             const std::vector<TypeProfile>& points);

}  // namespace johncheck
