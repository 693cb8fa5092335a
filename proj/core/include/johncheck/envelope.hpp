#pragma once

#include <vector>

#include "johncheck/types.hpp"

namespace johncheck {

/// Value of one menu outcome as an affine function of the mixing weight:
/// v(lambda) = intercept + slope * lambda, with
/// intercept = y.z - cost and slope = (x-y).z.
struct Line {
  double intercept = 0.0;  // value at lambda = 0
  double slope = 0.0;
  int outcome_index = -1;
};

/// Maximal subinterval of [0,1] on which one outcome wins the weighted
/// welfare argmax.
struct EnvelopeSegment {
  double lo = 0.0;
  double hi = 0.0;
  int winner = -1;
};

// Slopes closer than this (relative) are treated as parallel.
inline constexpr double kParallelSlopeTol = 1e-14;
// Segments shorter than this are merged into a neighbor.
inline constexpr double kMinSegmentLength = 1e-14;

/// One line per outcome at a fixed profile.
std::vector<Line> line_parameters(const Menu& menu, const TypeProfile& p);

/// Upper envelope of the lines over [0,1]: segments partition [0,1]
/// (first lo = 0, last hi = 1, contiguous) and on each open segment the
/// winner's line dominates, with exact ties resolved to the lowest outcome
/// index. Slope-sort plus crossing sweep, O(n log n).
std::vector<EnvelopeSegment> upper_envelope(const std::vector<Line>& lines);

/// Integral of the elementary rule over lambda ~ Uniform[0,1]:
/// sum over envelope segments of (hi - lo) * z_winner. Exact for finite
/// menus (no quadrature).
Vector integrate_uniform_mixture(const Menu& menu, const TypeProfile& p);

/// Weighted sum of elementary rules at the measure's atoms. The measure must
/// be discrete.
Vector integrate_discrete_mixture(const Menu& menu,
                                  const LambdaMeasure& measure,
                                  const TypeProfile& p);

}  // namespace johncheck
