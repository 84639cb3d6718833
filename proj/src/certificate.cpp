#include "qtrack/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace qtrack {

namespace {

// real roots of lambda^2 - b lambda + c with a nonnegative discriminant
std::pair<double, double> quadratic_roots(double b, double c) {
  double disc = b * b - 4.0 * c;
  if (disc < 0.0) {
    if (disc < -1e-10) {
      throw Error(Errc::internal_inconsistency, "complex roots in the dual quadratic");
    }
    disc = 0.0;
  }
  const double s = std::sqrt(disc);
  return {0.5 * (b - s), 0.5 * (b + s)};
}

// real parts of the roots of lambda^3 + a2 lambda^2 + a1 lambda + a0 via the
// companion matrix; the dual cubic has real roots
std::array<double, 3> cubic_roots(double a2, double a1, double a0) {
  Mat3 companion = Mat3::Zero();
  companion(1, 0) = 1.0;
  companion(2, 1) = 1.0;
  companion(0, 2) = -a0;
  companion(1, 2) = -a1;
  companion(2, 2) = -a2;
  Eigen::EigenSolver<Mat3> es(companion);
  std::array<double, 3> roots;
  for (int i = 0; i < 3; ++i) roots[i] = es.eigenvalues()(i).real();
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

DualCoefficients dual_coefficients(const GeometrySummary& g, const TrackingSolution& sol) {
  const bool branch_a = g.omega > 0.0;
  if (branch_a != (sol.procedure == Procedure::A)) {
    throw Error(Errc::procedure_mismatch, "solution branch does not match the indicator");
  }
  const double base3 = g.pi1 * g.r1_dot_rminus + g.pi2 * g.r2_dot_rminus;
  DualCoefficients x;
  x.x2 = 0.0;
  if (branch_a) {
    if (g.gamma_a <= 1e-14) {
      throw Error(Errc::singular_gamma, "gamma_a vanished on the omega > 0 branch");
    }
    x.x0 = 0.25 * (1.0 + g.gamma_a);
    x.x1 = g.r_cross_norm / (4.0 * g.r_minus_norm) * (1.0 + g.gamma_a);
    x.x3 = (base3 + g.Xi / g.gamma_a) / (4.0 * g.r_minus_norm);
  } else {
    if (g.gamma_b <= 1e-14) {
      throw Error(Errc::singular_gamma, "gamma_b vanished on the omega <= 0 branch");
    }
    x.x0 = 0.25 * (1.0 + g.gamma_b);
    x.x1 = (g.r_cross_norm + g.xi / g.gamma_b) / (4.0 * g.r_minus_norm);
    x.x3 = (base3 + g.Xi / g.gamma_b) / (4.0 * g.r_minus_norm);
  }
  return x;
}

DualCertificate build_f(const ValidatedProblem& p, const TrackingSolution& sol,
                        const DualCoefficients& coeffs) {
  DualCertificate cert;
  cert.coeffs = coeffs;

  const Unitary2 u = su2_from_so3(sol.U);
  const Unitary2 v = su2_from_so3(sol.V);
  const Mat2c s1 = v * p.rho1().density() * v.adjoint();
  const Mat2c s2 = v * p.rho2().density() * v.adjoint();
  const Mat2c t1 = u.adjoint() * (p.pi1() * p.target1().density()) * u;
  const Mat2c t2 = u.adjoint() * (p.pi2() * p.target2().density()) * u;
  cert.f0_tilde = -(kron(s1.transpose(), t1) + kron(s2.transpose(), t2));

  cert.f = cert.f0_tilde + coeffs.x0 * kron(pauli_i(), pauli_i()) +
           coeffs.x1 * kron(pauli_x(), pauli_i()) + coeffs.x2 * kron(pauli_y(), pauli_i()) +
           coeffs.x3 * kron(pauli_z(), pauli_i());

  const AffineParams canonical =
      sol.affine ? *sol.affine : AffineParams{1.0, 1.0, 1.0, 0.0};
  const Mat4c kd = choi_of_affine(canonical);

  Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (cert.f + cert.f.adjoint()));
  cert.eigenvalues = es.eigenvalues();
  cert.min_eigenvalue = cert.eigenvalues.minCoeff();
  cert.slackness_residual = (cert.f * kd).norm();
  cert.duality_residual = std::abs(2.0 * coeffs.x0 + (cert.f0_tilde * kd).trace().real());
  return cert;
}

DualCertificate certify(const ValidatedProblem& p) {
  const GeometrySummary g = summarize(p);
  const TrackingSolution sol = solve(p);
  return build_f(p, sol, dual_coefficients(g, sol));
}

CharPolyReport char_poly_check(const DualCertificate& cert, const GeometrySummary& g,
                               const TrackingSolution& sol) {
  CharPolyReport rep;
  const double rm2 = g.r_minus.squaredNorm();
  const double rx = g.r_cross_norm;

  if (sol.procedure == Procedure::A) {
    const double st = g.s_plus_t;
    const double ga = g.gamma_a;
    const double upsilon = (4.0 * rm2 * g.rbar_cross.squaredNorm() + st * st) /
                           (8.0 * rm2 * ga * ga * g.S * st);
    const double ga4 = ga * ga * ga * ga;
    const double bracket = (rm2 - rx * rx) * ga4 - g.Xi * g.Xi;
    const auto [r1, r2] = quadratic_roots(ga, upsilon * bracket);
    rep.predicted_roots = {0.0, 0.0, r1, r2};
    rep.sign_conditions = bracket >= -1e-10 && upsilon > 0.0;
  } else {
    const double gb = g.gamma_b;
    const double gb2 = gb * gb;
    const double sq = g.xi * g.xi + g.Xi * g.Xi;
    rep.varpi = ((1.0 + rx * g.xi / (rm2 * gb2)) * rm2 * rm2 * gb2 * gb2 -
                 (rm2 + rx * rx) * sq) /
                (4.0 * rm2 * rm2 * gb2);
    rep.omega_coef = -(rx * gb2 - g.xi) * (rm2 * gb2 * g.xi - rx * sq) /
                     (8.0 * rm2 * rm2 * gb2 * gb);
    const auto roots = cubic_roots(-gb, rep.varpi, rep.omega_coef);
    rep.predicted_roots = {0.0, roots[0], roots[1], roots[2]};
    // Simplified forms: varpi = (-omega + S + Rx Rbarx)/4 and the omega_coef
    // bracket reduces to R_-^4 Rbarx gamma_b^2; both nonnegative for omega <= 0.
    const double varpi_simple =
        0.25 * (-g.omega + g.S + rx * g.rbar_cross_norm);
    rep.sign_conditions = rep.varpi >= -1e-9 && rep.omega_coef <= 1e-9 &&
                          std::abs(rep.varpi - varpi_simple) <= 1e-8 &&
                          rx * gb2 - g.xi >= -1e-9;
  }

  for (int i = 0; i < 4; ++i) rep.eigenvalues[i] = cert.eigenvalues(i);
  std::sort(rep.predicted_roots.begin(), rep.predicted_roots.end());
  rep.max_deviation = 0.0;
  rep.roots_match = true;
  for (int i = 0; i < 4; ++i) {
    const double dev = std::abs(rep.predicted_roots[i] - rep.eigenvalues[i]);
    rep.max_deviation = std::max(rep.max_deviation, dev);
    if (dev > std::max(1e-8, 1e-8 * std::abs(rep.predicted_roots[i]))) {
      rep.roots_match = false;
    }
  }
  return rep;
}

}  // namespace qtrack
