#include "johncheck/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace johncheck {

namespace {

void validate_fd(const FDConfig& cfg) {
  if (!(cfg.step_scale > 0.0 && cfg.step_scale <= 1e-2))
    throw InvalidArgument("FDConfig: step_scale outside (0, 1e-2]");
}

double step_for(double coord, const FDConfig& cfg) {
  return cfg.step_scale * std::max(1.0, std::abs(coord));
}

SquareMatrix jacobian(const RuleFn& rule, const TypeProfile& p, Block block,
                      const FDConfig& cfg) {
  validate_fd(cfg);
  require_profile_dimension(p, 0, "jacobian");
  const int d = p.dimension();

  SquareMatrix out(d);
  TypeProfile probe = p;
  Vector& coords = (block == Block::x) ? probe.x : probe.y;
  const Vector& base = (block == Block::x) ? p.x : p.y;
  for (int j = 0; j < d; ++j) {
    const double h = step_for(base[j], cfg);
    const double up = base[j] + h;
    const double dn = base[j] - h;
    coords[j] = up;
    const Vector f_up = rule(probe);
    coords[j] = dn;
    const Vector f_dn = rule(probe);
    coords[j] = base[j];
    if (static_cast<int>(f_up.size()) != d ||
        static_cast<int>(f_dn.size()) != d)
      throw DimensionMismatch("jacobian: rule output dimension");
    const double span = up - dn;  // the step actually taken, exactly
    for (int i = 0; i < d; ++i) out(i, j) = (f_up[i] - f_dn[i]) / span;
  }
  return out;
}

}  // namespace

SquareMatrix jacobian_wrt_x(const RuleFn& rule, const TypeProfile& p,
                            const FDConfig& cfg) {
  return jacobian(rule, p, Block::x, cfg);
}

SquareMatrix jacobian_wrt_y(const RuleFn& rule, const TypeProfile& p,
                            const FDConfig& cfg) {
  return jacobian(rule, p, Block::y, cfg);
}

std::vector<double> symmetric_eigenvalues(const SquareMatrix& m) {
  const int n = m.size();
  if (n == 0) throw InvalidArgument("symmetric_eigenvalues: empty matrix");
  SquareMatrix a = symmetrized(m);
  if (!all_finite(a))
    throw InvalidArgument("symmetric_eigenvalues: non-finite entry");

  const double target = 1e-12 * frobenius_norm(m);

  auto off_diagonal_norm = [&a, n] {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  constexpr int kMaxSweeps = 64;
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm() > target;
       ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rutishauser rotation: smaller root of t^2 + 2t*theta - 1 = 0.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = a(p, p);
        const double aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          a(r, p) = arp - s * (arq + tau * arp);
          a(p, r) = a(r, p);
          a(r, q) = arq + s * (arp - tau * arq);
          a(q, r) = a(r, q);
        }
      }
    }
  }

  std::vector<double> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = a(i, i);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

double segment_line_integral(const RuleFn& rule, const TypeProfile& from,
                             const TypeProfile& to, Block vary, int n_panels) {
  if (n_panels < 1)
    throw InvalidArgument("segment_line_integral: n_panels < 1");
  require_profile_dimension(from, 0, "segment_line_integral");
  require_profile_dimension(to, from.dimension(), "segment_line_integral");

  const Vector& fixed_from = (vary == Block::x) ? from.y : from.x;
  const Vector& fixed_to = (vary == Block::x) ? to.y : to.x;
  if (fixed_from != fixed_to)
    throw InvalidArgument(
        "segment_line_integral: fixed coordinate differs between endpoints");

  const Vector& start = (vary == Block::x) ? from.x : from.y;
  const Vector& end = (vary == Block::x) ? to.x : to.y;

  const int d = from.dimension();
  Vector delta(d);
  for (int i = 0; i < d; ++i) delta[i] = end[i] - start[i];

  // 5-point Gauss-Legendre on [-1,1].
  static const double kNode[5] = {-0.9061798459386640, -0.5384693101056831,
                                  0.0, 0.5384693101056831,
                                  0.9061798459386640};
  static const double kWeight[5] = {0.2369268850561891, 0.4786286704993665,
                                    0.5688888888888889, 0.4786286704993665,
                                    0.2369268850561891};

  TypeProfile probe = from;
  Vector& moving = (vary == Block::x) ? probe.x : probe.y;
  double total = 0.0;
  const double panel_width = 1.0 / n_panels;
  for (int panel = 0; panel < n_panels; ++panel) {
    const double mid = (panel + 0.5) * panel_width;
    const double half = 0.5 * panel_width;
    for (int node = 0; node < 5; ++node) {
      const double t = mid + half * kNode[node];
      for (int i = 0; i < d; ++i) moving[i] = start[i] + t * delta[i];
      total += kWeight[node] * half * dot(delta, rule(probe));
    }
  }
  return total;
}

SquareMatrix cross_partial_matrix(const PotentialFn& potential,
                                  const TypeProfile& p, const FDConfig& cfg) {
  validate_fd(cfg);
  require_profile_dimension(p, 0, "cross_partial_matrix");
  const int d = p.dimension();

  SquareMatrix out(d);
  TypeProfile probe = p;
  for (int i = 0; i < d; ++i) {
    const double hx = step_for(p.x[i], cfg);
    const double x_up = p.x[i] + hx;
    const double x_dn = p.x[i] - hx;
    for (int j = 0; j < d; ++j) {
      const double hy = step_for(p.y[j], cfg);
      const double y_up = p.y[j] + hy;
      const double y_dn = p.y[j] - hy;

      probe.x[i] = x_up;
      probe.y[j] = y_up;
      const double pp = potential(probe);
      probe.y[j] = y_dn;
      const double pm = potential(probe);
      probe.x[i] = x_dn;
      probe.y[j] = y_up;
      const double mp = potential(probe);
      probe.y[j] = y_dn;
      const double mm = potential(probe);
      probe.x[i] = p.x[i];
      probe.y[j] = p.y[j];

      out(i, j) = ((pp - pm) - (mp - mm)) / ((x_up - x_dn) * (y_up - y_dn));
    }
  }
  return out;
}

}  // namespace johncheck
