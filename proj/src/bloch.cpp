#include "qtrack/bloch.hpp"

#include <cmath>

namespace qtrack {

const Mat2c& pauli(int k) {
  switch (k) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw Error(Errc::out_of_range, "pauli index must be 0..3");
  }
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::non_physical: return "NonPhysical";
    case Errc::not_a_rotation: return "NotARotation";
    case Errc::identical_sources: return "IdenticalSources";
    case Errc::both_targets_maximally_mixed: return "BothTargetsMaximallyMixed";
    case Errc::invalid_prior: return "InvalidPrior";
    case Errc::degenerate_sources: return "DegenerateSources";
    case Errc::degenerate_divisor: return "DegenerateDivisor";
    case Errc::procedure_mismatch: return "ProcedureMismatch";
    case Errc::internal_inconsistency: return "InternalInconsistency";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::targets_not_pure: return "TargetsNotPure";
    case Errc::targets_identical: return "TargetsIdentical";
    case Errc::empty_group: return "EmptyGroup";
    case Errc::weights_not_normalized: return "WeightsNotNormalized";
    case Errc::singular_gamma: return "SingularGamma";
    case Errc::invalid_input: return "InvalidInput";
  }
  return "Unknown";
}

Mat2c bloch_to_density(const Vec3& b) {
  if (b.norm() > 1.0 + tol::state) {
    throw Error(Errc::non_physical,
                "Bloch vector norm " + std::to_string(b.norm()) + " exceeds 1");
  }
  Mat2c rho = 0.5 * (pauli_i() + b.x() * pauli_x() + b.y() * pauli_y() + b.z() * pauli_z());
  return rho;
}

Vec3 density_to_bloch(const Mat2c& rho) {
  if ((rho - rho.adjoint()).norm() > tol::state) {
    throw Error(Errc::non_physical, "density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cplx(1.0)) > tol::state) {
    throw Error(Errc::non_physical, "density matrix trace is not 1");
  }
  Vec3 b((rho * pauli_x()).trace().real(), (rho * pauli_y()).trace().real(),
         (rho * pauli_z()).trace().real());
  // Eigenvalues of a trace-1 Hermitian 2x2 are (1 +- |b|)/2.
  if (b.norm() > 1.0 + 2.0 * tol::state) {
    throw Error(Errc::non_physical, "density matrix has a negative eigenvalue");
  }
  return b;
}

QubitState::QubitState(const Vec3& bloch) : bloch_(bloch), density_(bloch_to_density(bloch)) {}

QubitState QubitState::from_density(const Mat2c& rho) {
  return QubitState(density_to_bloch(rho));
}

double hs_inner(const QubitState& a, const QubitState& b) {
  return 0.5 * (1.0 + a.bloch().dot(b.bloch()));
}

double trace_norm_diff(const Mat2c& a, const Mat2c& b, double t) {
  if (t < 0.0) throw Error(Errc::out_of_range, "t must be nonnegative");
  const Mat2c d = a - t * b;
  const double tr = d.trace().real();
  const double det = (d(0, 0) * d(1, 1) - d(0, 1) * d(1, 0)).real();
  if (det >= 0.0) return std::abs(tr);
  return std::sqrt(tr * tr - 4.0 * det);
}

bool is_rotation(const Mat3& m, double eps) {
  return (m * m.transpose() - Mat3::Identity()).norm() <= eps &&
         std::abs(m.determinant() - 1.0) <= eps;
}

bool is_unitary(const Mat2c& u, double eps) {
  return (u * u.adjoint() - Mat2c::Identity()).norm() <= eps;
}

Vec3 any_orthogonal(const Vec3& u) {
  const Vec3 n = u.normalized();
  // standard basis vector least aligned with u
  int k = 0;
  double best = std::abs(n.x());
  if (std::abs(n.y()) < best) { k = 1; best = std::abs(n.y()); }
  if (std::abs(n.z()) < best) { k = 2; }
  return n.cross(Vec3::Unit(k)).normalized();
}

Rotation3 rotation_between(const Vec3& from, const Vec3& to) {
  const Vec3 f = from.normalized();
  const Vec3 t = to.normalized();
  const double c = f.dot(t);
  if (c > 1.0 - 1e-14) return Mat3::Identity();
  Vec3 axis = f.cross(t);
  const double s = axis.norm();
  if (s < 1e-14) {
    // antiparallel: half-turn about any axis orthogonal to f
    const Vec3 n = any_orthogonal(f);
    return Eigen::AngleAxisd(M_PI, n).toRotationMatrix();
  }
  return Eigen::AngleAxisd(std::atan2(s, c), axis / s).toRotationMatrix();
}

Unitary2 su2_from_so3(const Rotation3& r) {
  if (!is_rotation(r)) {
    throw Error(Errc::not_a_rotation, "matrix is not a proper rotation within 1e-12");
  }
  const double c = std::clamp(0.5 * (r.trace() - 1.0), -1.0, 1.0);
  const Vec3 skew(r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1));
  // the angle from the trace alone is ill-conditioned near 0 and pi
  const double angle = std::atan2(0.5 * skew.norm(), c);  // in [0, pi]
  Vec3 axis;
  if (c < -0.9999) {
    // near pi the skew part is too small to orient the axis; use the exact
    // identity n n^T = (sym(r) - c I)/(1 - c) instead
    const Mat3 nnt = (0.5 * (r + r.transpose()) - c * Mat3::Identity()) / (1.0 - c);
    int k;
    nnt.diagonal().maxCoeff(&k);
    axis = nnt.col(k).normalized();
    if (skew.norm() > 1e-14 && skew.dot(axis) < 0.0) axis = -axis;
  } else if (skew.norm() < 1e-14) {
    return Mat2c::Identity();  // rotation angle at roundoff level
  } else {
    axis = skew.normalized();
  }
  const double h = 0.5 * angle;
  const Mat2c n_sigma = axis.x() * pauli_x() + axis.y() * pauli_y() + axis.z() * pauli_z();
  Unitary2 u = std::cos(h) * Mat2c::Identity() - cplx(0, 1) * std::sin(h) * n_sigma;

  // conjugation must reproduce r on all three Pauli axes
  for (int k = 0; k < 3; ++k) {
    const Mat2c img = u * pauli(k + 1) * u.adjoint();
    const Vec3 v((img * pauli_x()).trace().real() / 2.0, (img * pauli_y()).trace().real() / 2.0,
                 (img * pauli_z()).trace().real() / 2.0);
    if ((v - r.col(k)).norm() > tol::action) {
      throw Error(Errc::internal_inconsistency, "su2 lift does not reproduce the rotation");
    }
  }
  return u;
}

ValidatedProblem validate_problem(const TrackingProblem& p) {
  if (!(p.pi1 > 0.0 && p.pi1 < 1.0)) {
    throw Error(Errc::invalid_prior, "pi1 must lie strictly between 0 and 1");
  }
  if ((p.rho1.bloch() - p.rho2.bloch()).norm() <= tol::distinct) {
    throw Error(Errc::identical_sources, "source states must be distinct");
  }
  if (p.target1.bloch().norm() <= tol::state && p.target2.bloch().norm() <= tol::state) {
    throw Error(Errc::both_targets_maximally_mixed,
                "both targets maximally mixed: use the depolarizing channel");
  }
  return ValidatedProblem(p);
}

}  // namespace qtrack
