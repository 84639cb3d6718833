#pragma once

#include "qtrack/bloch.hpp"

namespace qtrack {

// Every derived quantity the closed-form solution is built from.
//
//   r1, r2          source Bloch vectors R_i
//   rbar1, rbar2    prior-weighted target Bloch vectors (pi_i times the target)
//   r_plus/minus/cross      R1 +- R2 and R1 x R2, with their norms
//   rbar_plus/minus/cross   same combinations of the weighted targets
//   T = sum_ij (1 - R_i.R_j)(Rbar_i.Rbar_j)
//   S = sqrt(T^2 + 4 Rbar_x^2 (R_-^2 - R_x^2))       (real: R_-^2 > R_x^2)
//   omega = S + T - 2 Rbar_x R_x                      (> 0 selects procedure A)
//   Xi = sum_i (R_i.R_-)(Rbar_i.Rbar_+)
//   xi = R_x Rbar_+^2 + Rbar_x R_-^2
//   gamma_a = sqrt(Rbar_+^2 + 2 R_-^2 Rbar_x^2 / (S+T))
//   gamma_b = sqrt(Rbar_+^2 - T + 2 R_x Rbar_x)
struct GeometrySummary {
  Vec3 r1, r2;
  Vec3 rbar1, rbar2;
  double pi1, pi2;

  Vec3 r_plus, r_minus, r_cross;
  Vec3 rbar_plus, rbar_minus, rbar_cross;
  double r_plus_norm, r_minus_norm, r_cross_norm;
  double rbar_plus_norm, rbar_minus_norm, rbar_cross_norm;

  // R_i . R_- in the midpoint form (R_+ . R_-)/2 +- |R_-|^2/2, which keeps
  // full relative accuracy when the sources nearly coincide.
  double r1_dot_rminus, r2_dot_rminus;

  double T, S;
  // S + T evaluated cancellation-free: for T <= 0 the direct sum loses all
  // digits near the indicator boundary, so (S^2 - T^2)/(S - T) is used there.
  double s_plus_t;
  double omega;
  double Xi, xi;
  double gamma_a, gamma_b;
};

GeometrySummary summarize(const ValidatedProblem& p);

// omega recomputed from T, S and the cross norms.
double indicator(const GeometrySummary& g);

struct XiPair {
  double Xi, xi;
};
// Satisfies Xi^2 + xi^2 = R_-^2 Rbar_+^2 gamma_b^2.
XiPair xi_pair(const GeometrySummary& g);

// Throws Errc::degenerate_divisor if S+T vanishes while omega > 0 (cannot
// happen for a consistent summary).
double gamma_a(const GeometrySummary& g);

double gamma_b(const GeometrySummary& g);

}  // namespace qtrack
