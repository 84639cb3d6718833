#pragma once

#include <optional>

#include "qtrack/types.hpp"

namespace qtrack {

// rho = (I + b.sigma)/2. Throws Errc::non_physical if |b| > 1 + 1e-12.
Mat2c bloch_to_density(const Vec3& b);

// Inverse of bloch_to_density: components are Tr[rho X], Tr[rho Y], Tr[rho Z].
// Checks hermiticity, unit trace and positivity within 1e-12.
Vec3 density_to_bloch(const Mat2c& rho);

// A qubit state; the Bloch vector is canonical, the density matrix is a cache.
class QubitState {
 public:
  explicit QubitState(const Vec3& bloch);
  static QubitState from_density(const Mat2c& rho);

  const Vec3& bloch() const { return bloch_; }
  const Mat2c& density() const { return density_; }
  double purity() const { return 0.5 * (1.0 + bloch_.squaredNorm()); }
  bool is_pure(double eps = 1e-10) const { return 1.0 - bloch_.norm() <= eps; }

 private:
  Vec3 bloch_;
  Mat2c density_;
};

// Tr[rho_a rho_b] = (1 + r_a . r_b)/2.
double hs_inner(const QubitState& a, const QubitState& b);

// Trace norm of the Hermitian matrix a - t*b, t >= 0, in closed form
// (|l1| + |l2| = |tr| when det >= 0, else sqrt(tr^2 - 4 det)).
double trace_norm_diff(const Mat2c& a, const Mat2c& b, double t);

// 2x2 unitary u with u (b.sigma) u^dag = (r b).sigma for every Bloch vector b.
// Global sign is arbitrary; the conjugation action is checked on the three axes.
Unitary2 su2_from_so3(const Rotation3& r);

bool is_rotation(const Mat3& m, double eps = tol::rotation);
bool is_unitary(const Mat2c& u, double eps = tol::rotation);

// A deterministic proper rotation mapping unit vector `from` to unit vector `to`.
Rotation3 rotation_between(const Vec3& from, const Vec3& to);

// A deterministic unit vector orthogonal to u (|u| > 0).
Vec3 any_orthogonal(const Vec3& u);

struct TrackingProblem {
  QubitState rho1, rho2;      // the two possible preparations
  QubitState target1, target2;
  double pi1 = 0.5;           // prior of rho1; pi2 = 1 - pi1

  double pi2() const { return 1.0 - pi1; }
};

// Proof-of-validation wrapper: constructed only by validate_problem.
class ValidatedProblem {
 public:
  const TrackingProblem& get() const { return p_; }
  const QubitState& rho1() const { return p_.rho1; }
  const QubitState& rho2() const { return p_.rho2; }
  const QubitState& target1() const { return p_.target1; }
  const QubitState& target2() const { return p_.target2; }
  double pi1() const { return p_.pi1; }
  double pi2() const { return p_.pi2(); }

 private:
  friend ValidatedProblem validate_problem(const TrackingProblem& p);
  explicit ValidatedProblem(TrackingProblem p) : p_(std::move(p)) {}
  TrackingProblem p_;
};

// Checks: pi1 in (0,1); sources distinct (Bloch distance > 1e-10); targets not
// both maximally mixed. States were already validated at construction.
ValidatedProblem validate_problem(const TrackingProblem& p);

}  // namespace qtrack
