#pragma once

#include <array>

#include "qtrack/channel.hpp"

namespace qtrack {

struct DualCoefficients {
  double x0, x1, x2, x3;  // x2 = 0 always
};

// Dual feasible point certifying optimality: F >= 0, F K_D = 0, and the dual
// value 2 x0 matches the achieved figure of merit.
struct DualCertificate {
  DualCoefficients coeffs;
  Mat4c f;
  Mat4c f0_tilde;
  Eigen::Vector4d eigenvalues;  // ascending
  double min_eigenvalue;
  double slackness_residual;  // ||F K_D||_F
  double duality_residual;    // |2 x0 + Tr[F0~ K_D]|

  bool valid() const {
    return min_eigenvalue >= -tol::certificate && slackness_residual <= tol::certificate &&
           duality_residual <= tol::certificate;
  }
};

// Closed-form coefficients per indicator branch; 2 x0 equals the fidelity.
DualCoefficients dual_coefficients(const GeometrySummary& g, const TrackingSolution& sol);

DualCertificate build_f(const ValidatedProblem& p, const TrackingSolution& sol,
                        const DualCoefficients& coeffs);

// Solve + coefficients + LMI in one step.
DualCertificate certify(const ValidatedProblem& p);

// Comparison of eig(F) against the analytic characteristic polynomial:
// lambda^2 P2(lambda) for procedure A, lambda P3(lambda) for procedure B.
struct CharPolyReport {
  std::array<double, 4> predicted_roots;  // ascending
  std::array<double, 4> eigenvalues;      // ascending
  double max_deviation;
  double varpi = 0.0;        // cubic linear coefficient (procedure B)
  double omega_coef = 0.0;   // cubic constant coefficient (procedure B)
  bool roots_match;
  bool sign_conditions;  // varpi >= 0, omega_coef <= 0 when omega <= 0
};

CharPolyReport char_poly_check(const DualCertificate& cert, const GeometrySummary& g,
                               const TrackingSolution& sol);

}  // namespace qtrack
