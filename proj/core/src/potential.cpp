#include "johncheck/potential.hpp"

#include <cmath>
#include <cstdlib>

namespace johncheck {
namespace {

void require_anchor(const Vector& anchor, const Vector& target,
                    const char* label) {
  if (anchor.size() != target.size())
    throw DimensionMismatch(std::string(label) +
                            " anchor dimension does not match the profile");
  if (!all_finite(anchor))
    throw InvalidArgument(std::string(label) + " anchor is not finite");
}

}  // namespace

double reconstruct_potential_1(const RuleFn& rule, const TypeProfile& p,
                               const Vector& anchor_x, int n_panels) {
  require_anchor(anchor_x, p.x, "x");
  TypeProfile from{anchor_x, p.y};
  return segment_line_integral(rule, from, p, Block::x, n_panels);
}

double reconstruct_potential_2(const RuleFn& rule, const TypeProfile& p,
                               const Vector& anchor_y, int n_panels) {
  require_anchor(anchor_y, p.y, "y");
  TypeProfile from{p.x, anchor_y};
  return segment_line_integral(rule, from, p, Block::y, n_panels);
}

double reconstruct_potential_1_staircase(const RuleFn& rule,
                                         const TypeProfile& p,
                                         const Vector& anchor_x,
                                         int n_panels) {
  require_anchor(anchor_x, p.x, "x");
  double total = 0.0;
  Vector current = anchor_x;
  for (std::size_t j = 0; j < current.size(); ++j) {
    Vector next = current;
    next[j] = p.x[j];
    TypeProfile from{current, p.y};
    TypeProfile to{next, p.y};
    total += segment_line_integral(rule, from, to, Block::x, n_panels);
    current = std::move(next);
  }
  return total;
}

double reconstruct_potential_2_staircase(const RuleFn& rule,
                                         const TypeProfile& p,
                                         const Vector& anchor_y,
                                         int n_panels) {
  require_anchor(anchor_y, p.y, "y");
  double total = 0.0;
  Vector current = anchor_y;
  for (std::size_t j = 0; j < current.size(); ++j) {
    Vector next = current;
    next[j] = p.y[j];
    TypeProfile from{p.x, current};
    TypeProfile to{p.x, next};
    total += segment_line_integral(rule, from, to, Block::y, n_panels);
    current = std::move(next);
  }
  return total;
}

double PotentialField::operator()(const TypeProfile& p) const {
  if (agent == 1) return reconstruct_potential_1(rule, p, anchor, n_panels);
  if (agent == 2) return reconstruct_potential_2(rule, p, anchor, n_panels);
  throw InvalidArgument("PotentialField agent must be 1 or 2");
}

PaymentQuote payment_agent1(const RuleFn& rule, const TypeProfile& p,
                            const PotentialFn& closed_form_v1) {
  PaymentQuote q;
  q.point = p;
  q.allocation = rule(p);
  q.v1 = closed_form_v1(p);
  q.pi1 = dot(p.x, q.allocation) - *q.v1;
  q.anchored = false;
  return q;
}

PaymentQuote payment_agent1(const RuleFn& rule, const TypeProfile& p,
                            const Vector& anchor_x, int n_panels) {
  PaymentQuote q;
  q.point = p;
  q.allocation = rule(p);
  q.v1 = reconstruct_potential_1(rule, p, anchor_x, n_panels);
  q.pi1 = dot(p.x, q.allocation) - *q.v1;
  q.anchored = true;
  return q;
}

PaymentQuote payment_agent2(const RuleFn& rule, const TypeProfile& p,
                            const PotentialFn& closed_form_v2) {
  PaymentQuote q;
  q.point = p;
  q.allocation = rule(p);
  q.v2 = closed_form_v2(p);
  q.pi2 = dot(p.y, q.allocation) - *q.v2;
  q.anchored = false;
  return q;
}

PaymentQuote payment_agent2(const RuleFn& rule, const TypeProfile& p,
                            const Vector& anchor_y, int n_panels) {
  PaymentQuote q;
  q.point = p;
  q.allocation = rule(p);
  q.v2 = reconstruct_potential_2(rule, p, anchor_y, n_panels);
  q.pi2 = dot(p.y, q.allocation) - *q.v2;
  q.anchored = true;
  return q;
}

RuleComparison compare_rules(const RuleFn& rule_a, const RuleFn& rule_b,
                             const std::vector<TypeProfile>& points) {
  if (points.empty()) throw InvalidArgument("no comparison points");
  RuleComparison cmp;
  cmp.argmax_point = points.front();
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Vector a = rule_a(points[i]);
    const Vector b = rule_b(points[i]);
    if (a.size() != b.size())
      throw DimensionMismatch("compared rules produced different dimensions");
    double dev = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
      dev = std::max(dev, std::abs(a[j] - b[j]));
    if (dev > cmp.sup_norm) {
      cmp.sup_norm = dev;
      cmp.argmax_index = i;
      cmp.argmax_point = points[i];
    }
  }
  return cmp;
}

}  // namespace johncheck
