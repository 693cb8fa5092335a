#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace johncheck {

/// Point in R^d; doubles throughout, dimension carried by length.
using Vector = std::vector<double>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A point (or a finite-difference probe around one) left the rule's valid
/// domain.
struct DomainError : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct InvalidArgument : Error {
  using Error::Error;
};

/// Rejection sampling accepted fewer than 1% of draws.
struct SamplingExhausted : Error {
  using Error::Error;
};

/// Reported types of the two agents; x and y always share one dimension d.
struct TypeProfile {
  Vector x;
  Vector y;

  int dimension() const { return static_cast<int>(x.size()); }
};

/// Dense row-major d x d matrix. d stays small (Jacobians of type spaces),
/// so no sparsity and no BLAS.
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(int n, double fill = 0.0)
      : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int size() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<double>& data() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

double dot(const Vector& a, const Vector& b);
Vector multiply(const SquareMatrix& m, const Vector& v);
double frobenius_norm(const SquareMatrix& m);
/// ||M - M^T||_F, the residual of the gradient-symmetry conditions.
double antisymmetry_norm(const SquareMatrix& m);
SquareMatrix symmetrized(const SquareMatrix& m);
SquareMatrix transposed(const SquareMatrix& m);

bool all_finite(const Vector& v);
bool all_finite(const SquareMatrix& m);

/// Throws DimensionMismatch unless the profile is square (|x| == |y|) and of
/// the expected dimension (when expected > 0).
void require_profile_dimension(const TypeProfile& p, int expected,
                               const char* where);

/// One menu entry: an outcome z with the cost (conjugate value) attached to
/// choosing it.
struct Outcome {
  Vector z;
  double cost = 0.0;
};

/// Finite outcome set encoding the max-affine potential
/// phi(w) = max_k { w.z_k - cost_k } and its conjugate.
struct Menu {
  std::vector<Outcome> outcomes;

  int dimension() const {
    return outcomes.empty() ? 0 : static_cast<int>(outcomes.front().z.size());
  }
};

/// Weighting of the mixing parameter lambda over [0,1]: either Lebesgue or a
/// finite list of atoms.
struct LambdaMeasure {
  enum class Kind { uniform_on_01, discrete_atoms };

  struct Atom {
    double lambda = 0.0;
    double weight = 0.0;
  };

  Kind kind = Kind::uniform_on_01;
  std::vector<Atom> atoms;  // discrete_atoms only

  static LambdaMeasure uniform();
  static LambdaMeasure discrete(std::vector<Atom> atoms);

  /// Mean of lambda under the measure (1/2 for uniform).
  double mean() const;
};

// Atom weights must sum to 1 within this.
inline constexpr double kWeightSumTol = 1e-12;

/// The worked two-good assignment rule on x1 > x2, y1 < y2 (d = 2):
/// T = ((x1-x2)/D, (y2-y1)/D), D = x1-x2+y2-y1.
struct BuiltinTwoGoodAssignment {};

/// Mixture of elementary argmax rules over one shared menu, weighted by a
/// lambda measure.
struct FiniteMenuMixture {
  Menu menu;
  LambdaMeasure measure;
};

/// Smooth test family with potential phi(w) = w.Hw/2 + b.w shared across
/// lambda; H symmetric PSD. Mixing in lambda collapses to the measure mean.
struct QuadraticFamily {
  SquareMatrix hessian;  // H
  Vector offset;         // b
  LambdaMeasure measure;
};

/// T(x,y) = Mx.x + My.y; counterexample generator, not implementable unless
/// the matrices are symmetric PSD.
struct LinearRule {
  SquareMatrix mat_x;
  SquareMatrix mat_y;
};

struct RuleSpec {
  std::variant<BuiltinTwoGoodAssignment, FiniteMenuMixture, QuadraticFamily,
               LinearRule>
      value;

  int dimension() const;
};

}  // namespace johncheck
