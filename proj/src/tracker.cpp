#include "qtrack/tracker.hpp"

#include <cmath>

namespace qtrack {

namespace {

// Collinearity threshold for the weighted target pair, relative to its scale.
// Below it the antiparallel construction costs O(eps) fidelity (~1e-13 in
// practice); above it the k-map construction is accurate. Both hold with
// orders of margin at 1e-11.
double collinear_eps(const GeometrySummary& g) {
  return 1e-11 * std::max(g.rbar1.norm() * g.rbar2.norm(), 1e-300);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Right-handed frame with e1 along `primary` and e2 the unit component of
// `secondary` orthogonal to it.
Rotation3 frame_of(const Vec3& primary, const Vec3& secondary) {
  const Vec3 e1 =
      primary.norm() > 1e-300 ? Vec3(primary.normalized()) : Vec3::UnitX();
  Vec3 q = secondary - secondary.dot(e1) * e1;
  q -= q.dot(e1) * e1;  // second pass: |q| can be far below |secondary|
  // the threshold is relative to the secondary itself: a small but accurately
  // known constraint still pins the in-plane phase
  const Vec3 e2 = q.norm() > 1e-6 * secondary.norm() ? Vec3(q.normalized())
                                                     : any_orthogonal(e1);
  Rotation3 f;
  f.col(0) = e1;
  f.col(1) = e2;
  f.col(2) = e1.cross(e2);
  return f;
}

// Rotation mapping xa -> xp and ya -> yp. The larger preimage carries the
// frame's primary axis, so the smaller constraint's direction noise only
// ever multiplies its own norm.
Rotation3 rotation_from_pairs(const Vec3& xa, const Vec3& xp, const Vec3& ya,
                              const Vec3& yp) {
  if (xa.norm() >= ya.norm()) {
    return frame_of(xp, yp) * frame_of(xa, ya).transpose();
  }
  return frame_of(yp, xp) * frame_of(ya, xa).transpose();
}

struct KMap {
  Vec3 p1, p2;          // predicted images of the two frame vectors
  double a1z, a2z;      // z-components of the preimages (x-components are alpha)
  Vec3 sum_a, diff_a;   // preimage sum/difference; the difference is exactly z
  Vec3 sum_p, diff_p;   // image sum/difference in subtraction-free form
};

// Predicted action of U per the k-coefficient map. Evaluated in a grouped
// form that stays accurate when the weighted targets are nearly collinear
// (the naive k_ij blow up like 1/Rbar_x there and cancel), with the pair sum
// and difference formed analytically so their directions keep full relative
// accuracy even when the two preimages nearly coincide.
KMap k_map(const GeometrySummary& g, double alpha, double beta1, double beta2,
           double dbeta, double alpha_dbeta, double gamma) {
  KMap km;
  const Vec3 base = alpha * alpha * g.rbar_plus;
  const Vec3 w = beta1 * g.rbar1 + beta2 * g.rbar2;
  const double rbx = g.rbar_cross_norm;
  const double nx2 = g.rbar_cross.squaredNorm();
  const Vec3 c1 = g.rbar1.cross(g.rbar_cross);
  const Vec3 c2 = g.rbar2.cross(g.rbar_cross);
  km.p1 = (base + beta1 * nx2 * w + alpha_dbeta * c2) / gamma;
  km.p2 = (base + beta2 * nx2 * w - alpha_dbeta * c1) / gamma;
  km.a1z = beta1 * rbx;
  km.a2z = beta2 * rbx;
  km.sum_a = Vec3(2.0 * alpha, 0.0, (beta1 + beta2) * rbx);
  km.diff_a = Vec3(0.0, 0.0, dbeta * rbx);
  km.sum_p = (2.0 * base + (beta1 + beta2) * nx2 * w -
              alpha_dbeta * g.rbar_minus.cross(g.rbar_cross)) /
             gamma;
  km.diff_p =
      (dbeta * nx2 * w + alpha_dbeta * g.rbar_plus.cross(g.rbar_cross)) / gamma;
  return km;
}

void check_action(const Rotation3& u, double alpha, const KMap& km) {
  const Vec3 a1(alpha, 0.0, km.a1z);
  const Vec3 a2(alpha, 0.0, km.a2z);
  if ((u * a1 - km.p1).norm() > tol::action || (u * a2 - km.p2).norm() > tol::action) {
    throw Error(Errc::internal_inconsistency, "rotation U does not reproduce the k-map");
  }
  if (!is_rotation(u, 1e-10)) {
    throw Error(Errc::internal_inconsistency, "constructed U is not a proper rotation");
  }
}

}  // namespace

Rotation3 rotation_v(const GeometrySummary& g) {
  if (g.r_minus_norm <= tol::distinct) {
    throw Error(Errc::degenerate_sources, "sources coincide");
  }
  // Frame by Gram-Schmidt rather than from the cross product: the in-plane
  // axis is the unit component of R1 orthogonal to R_-, which keeps the
  // sources' y-components at roundoff even for nearly collinear pairs.
  const Vec3 u_hat = g.r_minus / g.r_minus_norm;
  Vec3 w = g.r1 - g.r1.dot(u_hat) * u_hat;
  w -= w.dot(u_hat) * u_hat;  // second pass: |w| can be far below |R1|
  const Vec3 m_hat = w.norm() > 1e-12 ? Vec3(w.normalized()) : any_orthogonal(u_hat);
  const Vec3 n_hat = u_hat.cross(m_hat);
  Rotation3 v;
  v.row(0) = m_hat;
  v.row(1) = n_hat;
  v.row(2) = u_hat;

  for (int i = 0; i < 2; ++i) {
    const Vec3& r = i == 0 ? g.r1 : g.r2;
    const Vec3 expect(g.r_cross_norm / g.r_minus_norm, 0.0,
                      (i == 0 ? g.r1_dot_rminus : g.r2_dot_rminus) / g.r_minus_norm);
    if ((v * r - expect).norm() > tol::action) {
      throw Error(Errc::internal_inconsistency, "rotation V does not map the sources as required");
    }
  }
  return v;
}

AffineParams affine_params(const GeometrySummary& g) {
  if (!(g.omega > 0.0)) {
    throw Error(Errc::procedure_mismatch, "affine parameters are defined for omega > 0 only");
  }
  const double st = g.s_plus_t;  // > 0 when omega > 0
  const double rbx = g.rbar_cross_norm;
  const double rx = g.r_cross_norm;
  const double rm = g.r_minus_norm;
  AffineParams a;
  a.mu1 = clamp01(2.0 * std::sqrt(2.0 / (g.S * st * st * st)) * rbx * rbx * rx * rm);
  a.mu2 = clamp01(2.0 / st * rbx * rx);
  a.mu3 = clamp01(std::sqrt(2.0 / (g.S * st)) * rbx * rm);
  // the bracket (S+T)^2 - 4 Rbarx^2 Rx^2 factors as omega (S+T + 2 Rbarx Rx)
  a.s1 = clamp01(std::sqrt(1.0 / (2.0 * g.S * st * st * st)) * g.omega *
                 (st + 2.0 * rbx * rx));
  return a;
}

Rotation3 rotation_u_a(const GeometrySummary& g) {
  if (!(g.omega > 0.0)) {
    throw Error(Errc::procedure_mismatch, "procedure A requires omega > 0");
  }
  // No division by Rbar_x occurs on this branch: for collinear targets the
  // k map itself degenerates to aligning x with Rbar_+.
  const double st = g.s_plus_t;
  const double alpha = std::sqrt(st / (2.0 * g.S));
  const double bscale = std::sqrt(2.0 / (g.S * st));
  const double beta1 = bscale * g.r1_dot_rminus;
  const double beta2 = bscale * g.r2_dot_rminus;
  const double dbeta = bscale * g.r_minus.squaredNorm();  // beta1 - beta2, exact form
  const double alpha_dbeta = g.r_minus.squaredNorm() / g.S;
  const KMap km = k_map(g, alpha, beta1, beta2, dbeta, alpha_dbeta, g.gamma_a);
  const Rotation3 u = rotation_from_pairs(km.sum_a, km.sum_p, km.diff_a, km.diff_p);
  check_action(u, alpha, km);
  return u;
}

RotationUB rotation_u_b(const GeometrySummary& g) {
  if (g.omega > 0.0) {
    throw Error(Errc::procedure_mismatch, "procedure B requires omega <= 0");
  }
  RotationUB out;
  const double alpha = g.r_cross_norm / g.r_minus_norm;
  if (g.rbar_cross_norm > collinear_eps(g)) {
    const double beta1 = g.r1_dot_rminus / (g.rbar_cross_norm * g.r_minus_norm);
    const double beta2 = g.r2_dot_rminus / (g.rbar_cross_norm * g.r_minus_norm);
    const double dbeta = g.r_minus_norm / g.rbar_cross_norm;  // beta1 - beta2
    const double alpha_dbeta = g.r_cross_norm / g.rbar_cross_norm;
    const KMap km = k_map(g, alpha, beta1, beta2, dbeta, alpha_dbeta, g.gamma_b);
    out.u = rotation_from_pairs(km.sum_a, km.sum_p, km.diff_a, km.diff_p);
    check_action(out.u, alpha, km);
    return out;
  }

  // Anti-parallel targets (parallel ones force omega > 0): rotate within the
  // xz-plane by vartheta, then take z onto the axis of the target pair.
  const double n1 = g.rbar1.norm();
  const double n2 = g.rbar2.norm();
  const double denom = g.r_minus_norm * g.gamma_b;
  if (denom <= 1e-14) {
    throw Error(Errc::internal_inconsistency, "vanishing gamma_b on the unitary branch");
  }
  double sin_t = g.r_cross_norm * (n1 - n2) / denom;
  sin_t = std::clamp(sin_t, -1.0, 1.0);
  const double cos_t = std::sqrt(1.0 - sin_t * sin_t);
  Rotation3 plane;
  plane << cos_t, 0.0, -sin_t,
           0.0, 1.0, 0.0,
           sin_t, 0.0, cos_t;
  const Vec3 axis = n1 > 1e-14 ? Vec3(g.rbar1 / n1) : Vec3(-g.rbar2 / n2);
  out.u = rotation_between(Vec3::UnitZ(), axis) * plane;
  out.vartheta = std::atan2(sin_t, cos_t);
  return out;
}

double figure_of_merit(const ValidatedProblem& p, const Mat3& m, const Vec3& c) {
  const Vec3 o1 = m * p.rho1().bloch() + c;
  const Vec3 o2 = m * p.rho2().bloch() + c;
  return p.pi1() * 0.5 * (1.0 + o1.dot(p.target1().bloch())) +
         p.pi2() * 0.5 * (1.0 + o2.dot(p.target2().bloch()));
}

TrackingSolution solve(const ValidatedProblem& p) {
  const GeometrySummary g = summarize(p);
  TrackingSolution sol;
  sol.V = rotation_v(g);

  double gamma;
  if (g.omega > 0.0) {
    sol.procedure = Procedure::A;
    sol.affine = affine_params(g);
    sol.U = rotation_u_a(g);
    gamma = g.gamma_a;
    const double st = g.s_plus_t;
    sol.alpha = std::sqrt(st / (2.0 * g.S));
    const double bscale = std::sqrt(2.0 / (g.S * st));
    sol.beta1 = bscale * g.r1_dot_rminus;
    sol.beta2 = bscale * g.r2_dot_rminus;
  } else {
    sol.procedure = Procedure::B;
    RotationUB ub = rotation_u_b(g);
    sol.U = ub.u;
    sol.vartheta = ub.vartheta;
    gamma = g.gamma_b;
    sol.alpha = g.r_cross_norm / g.r_minus_norm;
    if (!ub.vartheta) {
      sol.beta1 = g.r1_dot_rminus / (g.rbar_cross_norm * g.r_minus_norm);
      sol.beta2 = g.r2_dot_rminus / (g.rbar_cross_norm * g.r_minus_norm);
    }
  }
  sol.fidelity = 0.5 + 0.5 * gamma;

  // assemble the Bloch-level action and re-derive the figure of merit
  Mat3 m = sol.U * sol.V;
  Vec3 c = Vec3::Zero();
  if (sol.affine) {
    const Vec3 scale(sol.affine->mu1, sol.affine->mu2, sol.affine->mu3);
    m = sol.U * scale.asDiagonal() * sol.V;
    c = sol.U * Vec3(sol.affine->s1, 0.0, 0.0);
  }
  sol.out1 = m * g.r1 + c;
  sol.out2 = m * g.r2 + c;
  const double achieved = figure_of_merit(p, m, c);
  if (std::abs(achieved - sol.fidelity) > 1e-10) {
    throw Error(Errc::internal_inconsistency,
                "assembled map does not achieve the closed-form figure of merit");
  }
  return sol;
}

}  // namespace qtrack
