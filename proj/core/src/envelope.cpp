#include "johncheck/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "johncheck/rules.hpp"

namespace johncheck {

namespace {

bool nearly_parallel(const Line& a, const Line& b) {
  const double scale =
      std::max({1.0, std::abs(a.slope), std::abs(b.slope)});
  return std::abs(a.slope - b.slope) <= kParallelSlopeTol * scale;
}

// lambda at which `incoming` (the steeper line) overtakes `resident`.
double crossing(const Line& resident, const Line& incoming) {
  return (resident.intercept - incoming.intercept) /
         (incoming.slope - resident.slope);
}

}  // namespace

std::vector<Line> line_parameters(const Menu& menu, const TypeProfile& p) {
  if (menu.outcomes.empty())
    throw InvalidArgument("line_parameters: empty menu");
  require_profile_dimension(p, menu.dimension(), "line_parameters");

  Vector gap(p.x.size());
  for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = p.x[i] - p.y[i];

  std::vector<Line> lines;
  lines.reserve(menu.outcomes.size());
  for (std::size_t k = 0; k < menu.outcomes.size(); ++k) {
    const Outcome& o = menu.outcomes[k];
    if (o.z.size() != p.x.size())
      throw DimensionMismatch("line_parameters: outcome dimension");
    lines.push_back(
        {dot(p.y, o.z) - o.cost, dot(gap, o.z), static_cast<int>(k)});
  }
  return lines;
}

std::vector<EnvelopeSegment> upper_envelope(const std::vector<Line>& lines) {
  if (lines.empty()) throw InvalidArgument("upper_envelope: no lines");
  for (const Line& ln : lines)
    if (!std::isfinite(ln.intercept) || !std::isfinite(ln.slope))
      throw InvalidArgument("upper_envelope: non-finite line");

  // Slope ascending; among equal slopes the highest line first, then lowest
  // index so exact duplicates resolve to the lowest outcome index.
  std::vector<Line> order(lines);
  std::sort(order.begin(), order.end(), [](const Line& a, const Line& b) {
    if (a.slope != b.slope) return a.slope < b.slope;
    if (a.intercept != b.intercept) return a.intercept > b.intercept;
    return a.outcome_index < b.outcome_index;
  });

  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  // hull[k] is maximal on [start[k], start[k+1]).
  std::vector<Line> hull;
  std::vector<double> start;
  for (const Line& ln : order) {
    bool keep = true;
    while (!hull.empty()) {
      const Line& top = hull.back();
      if (nearly_parallel(top, ln)) {
        if (ln.intercept > top.intercept) {
          hull.pop_back();
          start.pop_back();
          continue;
        }
        keep = false;
        break;
      }
      const double cross = crossing(top, ln);
      if (cross <= start.back()) {
        hull.pop_back();
        start.pop_back();
        continue;
      }
      break;
    }
    if (!keep) continue;
    start.push_back(hull.empty() ? kNegInf : crossing(hull.back(), ln));
    hull.push_back(ln);
  }

  // Clip the hull to [0,1], dropping slivers below kMinSegmentLength by
  // letting the next winner extend backwards over them.
  std::vector<EnvelopeSegment> segments;
  double cursor = 0.0;
  for (std::size_t k = 0; k < hull.size(); ++k) {
    const bool last = (k + 1 == hull.size());
    double hi = last ? 1.0 : std::min(1.0, std::max(cursor, start[k + 1]));
    if (start[k] >= 1.0) break;  // hull tail never active inside [0,1]
    if (!last && hi - cursor < kMinSegmentLength) continue;
    if (!segments.empty() && segments.back().winner == hull[k].outcome_index) {
      segments.back().hi = hi;  // coalesce after a dropped sliver
    } else {
      segments.push_back({cursor, hi, hull[k].outcome_index});
    }
    cursor = hi;
  }
  // Absorb a trailing sliver left by the clip.
  segments.back().hi = 1.0;
  if (segments.size() > 1 &&
      segments.back().hi - segments.back().lo < kMinSegmentLength) {
    const EnvelopeSegment tail = segments.back();
    segments.pop_back();
    segments.back().hi = tail.hi;
  }
  return segments;
}

Vector integrate_uniform_mixture(const Menu& menu, const TypeProfile& p) {
  const auto segments = upper_envelope(line_parameters(menu, p));
  Vector out(p.x.size(), 0.0);
  for (const EnvelopeSegment& seg : segments) {
    const Vector& z = menu.outcomes[static_cast<std::size_t>(seg.winner)].z;
    const double len = seg.hi - seg.lo;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += len * z[i];
  }
  return out;
}

Vector integrate_discrete_mixture(const Menu& menu,
                                  const LambdaMeasure& measure,
                                  const TypeProfile& p) {
  if (measure.kind != LambdaMeasure::Kind::discrete_atoms)
    throw InvalidArgument("integrate_discrete_mixture: measure not discrete");
  Vector out(p.x.size(), 0.0);
  for (const LambdaMeasure::Atom& atom : measure.atoms) {
    const Vector z = evaluate_elementary(menu, atom.lambda, p);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += atom.weight * z[i];
  }
  return out;
}

}  // namespace johncheck
