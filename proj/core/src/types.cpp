#include "johncheck/types.hpp"

#include <algorithm>
#include <cmath>

namespace johncheck {

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot: unequal lengths");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector multiply(const SquareMatrix& m, const Vector& v) {
  if (static_cast<std::size_t>(m.size()) != v.size())
    throw DimensionMismatch("multiply: matrix/vector size");
  Vector out(v.size(), 0.0);
  for (int i = 0; i < m.size(); ++i) {
    double s = 0.0;
    for (int j = 0; j < m.size(); ++j) s += m(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

double frobenius_norm(const SquareMatrix& m) {
  double s = 0.0;
  for (double v : m.data()) s += v * v;
  return std::sqrt(s);
}

double antisymmetry_norm(const SquareMatrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) {
      const double r = m(i, j) - m(j, i);
      s += r * r;
    }
  return std::sqrt(s);
}

SquareMatrix symmetrized(const SquareMatrix& m) {
  SquareMatrix out(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = 0.5 * (m(i, j) + m(j, i));
  return out;
}

SquareMatrix transposed(const SquareMatrix& m) {
  SquareMatrix out(m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) out(i, j) = m(j, i);
  return out;
}

bool all_finite(const Vector& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

bool all_finite(const SquareMatrix& m) {
  return std::all_of(m.data().begin(), m.data().end(),
                     [](double x) { return std::isfinite(x); });
}

void require_profile_dimension(const TypeProfile& p, int expected,
                               const char* where) {
  if (p.x.size() != p.y.size())
    throw DimensionMismatch(std::string(where) + ": |x| != |y|");
  if (expected > 0 && p.dimension() != expected)
    throw DimensionMismatch(std::string(where) + ": expected dimension " +
                            std::to_string(expected) + ", got " +
                            std::to_string(p.dimension()));
  if (p.x.empty()) throw DimensionMismatch(std::string(where) + ": empty profile");
}

LambdaMeasure LambdaMeasure::uniform() { return LambdaMeasure{}; }

LambdaMeasure LambdaMeasure::discrete(std::vector<Atom> atoms) {
  LambdaMeasure m;
  m.kind = Kind::discrete_atoms;
  m.atoms = std::move(atoms);
  return m;
}

double LambdaMeasure::mean() const {
  if (kind == Kind::uniform_on_01) return 0.5;
  double s = 0.0;
  for (const Atom& a : atoms) s += a.weight * a.lambda;
  return s;
}

int RuleSpec::dimension() const {
  struct Visitor {
    int operator()(const BuiltinTwoGoodAssignment&) const { return 2; }
    int operator()(const FiniteMenuMixture& r) const {
      return r.menu.dimension();
    }
    int operator()(const QuadraticFamily& r) const { return r.hessian.size(); }
    int operator()(const LinearRule& r) const { return r.mat_x.size(); }
  };
  return std::visit(Visitor{}, value);
}

}  // namespace johncheck
