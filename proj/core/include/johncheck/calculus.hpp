#pragma once

#include <vector>

#include "johncheck/rules.hpp"
#include "johncheck/types.hpp"

namespace johncheck {

/// Central finite differences with per-coordinate step
/// h_j = step_scale * max(1, |coord_j|).
struct FDConfig {
  double step_scale = 1e-5;  // must lie in (0, 1e-2]
};

/// Which block of the profile varies while the other stays fixed.
enum class Block { x, y };

/// M[i][j] ~ dT^i/dx_j by central differences; O(h^2) for C^3 rules.
/// DomainError from the rule propagates when a probe leaves its domain
/// (shrink the step or move the point).
SquareMatrix jacobian_wrt_x(const RuleFn& rule, const TypeProfile& p,
                            const FDConfig& cfg = {});

/// M[i][j] ~ dT^i/dy_j; the same scheme with the roles of x and y swapped.
SquareMatrix jacobian_wrt_y(const RuleFn& rule, const TypeProfile& p,
                            const FDConfig& cfg = {});

/// Eigenvalues of the symmetric part (M+M^T)/2, ascending. Cyclic Jacobi
/// rotations until the off-diagonal norm drops below 1e-12 * ||M||_F.
std::vector<double> symmetric_eigenvalues(const SquareMatrix& m);

/// Integral of delta . T along the straight segment from `from` to `to`,
/// where only the `vary` block moves (the other block must match exactly in
/// both endpoints) and delta is the endpoint difference of that block.
/// Composite 5-point Gauss-Legendre over n_panels panels.
double segment_line_integral(const RuleFn& rule, const TypeProfile& from,
                             const TypeProfile& to, Block vary, int n_panels);

/// M[i][j] ~ d2 V / dx_i dy_j by the 4-point mixed central stencil. The
/// antisymmetric part of the result is the mixed-partial symmetry residual.
SquareMatrix cross_partial_matrix(const PotentialFn& potential,
                                  const TypeProfile& p,
                                  const FDConfig& cfg = {});

}  // namespace johncheck
