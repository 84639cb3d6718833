#include "qtrack/geometry.hpp"

#include <cmath>

namespace qtrack {

namespace {

// roundoff-only negative arguments are clamped to zero
double sqrt_clamped(double x) {
  if (x < 0.0) {
    if (x < -1e-12) {
      throw Error(Errc::internal_inconsistency, "square root of a negative quantity");
    }
    return 0.0;
  }
  return std::sqrt(x);
}

}  // namespace

double indicator(const GeometrySummary& g) {
  return g.s_plus_t - 2.0 * g.rbar_cross_norm * g.r_cross_norm;
}

XiPair xi_pair(const GeometrySummary& g) {
  XiPair p;
  p.Xi = g.r1_dot_rminus * g.rbar1.dot(g.rbar_plus) +
         g.r2_dot_rminus * g.rbar2.dot(g.rbar_plus);
  p.xi = g.r_cross_norm * g.rbar_plus.squaredNorm() +
         g.rbar_cross_norm * g.r_minus.squaredNorm();
  return p;
}

double gamma_a(const GeometrySummary& g) {
  const double st = g.s_plus_t;
  if (st <= 0.0) {
    if (g.omega > 0.0) {
      throw Error(Errc::degenerate_divisor, "S+T vanished while omega > 0");
    }
    // S+T = 0 forces Rbar_x = 0, so the second term vanishes
    return g.rbar_plus_norm;
  }
  const double rx2 = g.rbar_cross_norm * g.rbar_cross_norm;
  return sqrt_clamped(g.rbar_plus.squaredNorm() + 2.0 * g.r_minus.squaredNorm() * rx2 / st);
}

double gamma_b(const GeometrySummary& g) {
  return sqrt_clamped(g.rbar_plus.squaredNorm() - g.T +
                      2.0 * g.r_cross_norm * g.rbar_cross_norm);
}

GeometrySummary summarize(const ValidatedProblem& p) {
  GeometrySummary g;
  g.r1 = p.rho1().bloch();
  g.r2 = p.rho2().bloch();
  g.pi1 = p.pi1();
  g.pi2 = p.pi2();
  g.rbar1 = g.pi1 * p.target1().bloch();
  g.rbar2 = g.pi2 * p.target2().bloch();

  g.r_plus = g.r1 + g.r2;
  g.r_minus = g.r1 - g.r2;
  // R1 x R2 = (R_- x R_+)/2, exact and free of the cancellation the direct
  // cross suffers for nearly identical sources
  g.r_cross = 0.5 * g.r_minus.cross(g.r_plus);
  g.rbar_plus = g.rbar1 + g.rbar2;
  g.rbar_minus = g.rbar1 - g.rbar2;
  g.rbar_cross = g.rbar1.cross(g.rbar2);

  const double half_pm = 0.5 * g.r_plus.dot(g.r_minus);
  const double half_mm = 0.5 * g.r_minus.squaredNorm();
  g.r1_dot_rminus = half_pm + half_mm;
  g.r2_dot_rminus = half_pm - half_mm;

  g.r_plus_norm = g.r_plus.norm();
  g.r_minus_norm = g.r_minus.norm();
  g.r_cross_norm = g.r_cross.norm();
  g.rbar_plus_norm = g.rbar_plus.norm();
  g.rbar_minus_norm = g.rbar_minus.norm();
  g.rbar_cross_norm = g.rbar_cross.norm();

  const Vec3 r[2] = {g.r1, g.r2};
  const Vec3 rb[2] = {g.rbar1, g.rbar2};
  g.T = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      g.T += (1.0 - r[i].dot(r[j])) * rb[i].dot(rb[j]);
    }
  }
  // R_-^2 - R_x^2 > 0 for distinct sources, so the argument is nonnegative
  const double gap = g.r_minus.squaredNorm() - g.r_cross.squaredNorm();
  const double s2_minus_t2 = 4.0 * g.rbar_cross.squaredNorm() * gap;
  g.S = sqrt_clamped(g.T * g.T + s2_minus_t2);
  if (g.T > 0.0) {
    g.s_plus_t = g.S + g.T;
  } else {
    const double denom = g.S - g.T;
    g.s_plus_t = denom > 0.0 ? s2_minus_t2 / denom : 0.0;
  }

  g.omega = indicator(g);
  const XiPair xp = xi_pair(g);
  g.Xi = xp.Xi;
  g.xi = xp.xi;
  g.gamma_a = gamma_a(g);
  g.gamma_b = gamma_b(g);
  return g;
}

}  // namespace qtrack
