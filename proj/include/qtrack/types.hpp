#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qtrack {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat2c = Eigen::Matrix2cd;
using Mat4c = Eigen::Matrix4cd;

// Bloch-space rotation (3x3 orthogonal, det +1) and its 2x2 unitary lift.
using Rotation3 = Mat3;
using Unitary2 = Mat2c;

inline const Mat2c& pauli_i() {
  static const Mat2c m = Mat2c::Identity();
  return m;
}
inline const Mat2c& pauli_x() {
  static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
  return m;
}
inline const Mat2c& pauli_y() {
  static const Mat2c m = (Mat2c() << 0, cplx(0, -1), cplx(0, 1), 0).finished();
  return m;
}
inline const Mat2c& pauli_z() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}

// Pauli by index, 0 = identity.
const Mat2c& pauli(int k);

enum class Errc {
  non_physical,
  not_a_rotation,
  identical_sources,
  both_targets_maximally_mixed,
  invalid_prior,
  degenerate_sources,
  degenerate_divisor,
  procedure_mismatch,
  internal_inconsistency,
  out_of_range,
  targets_not_pure,
  targets_identical,
  empty_group,
  weights_not_normalized,
  singular_gamma,
  invalid_input,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Absolute tolerances used across the library.
namespace tol {
inline constexpr double state = 1e-12;        // state validity (hermiticity, trace, PSD)
inline constexpr double distinct = 1e-10;     // minimal Bloch distance between sources
inline constexpr double rotation = 1e-12;     // orthogonality / determinant checks
inline constexpr double action = 1e-10;       // rotation post-condition on mapped vectors
inline constexpr double certificate = 1e-9;   // PSD / slackness / duality acceptance
}  // namespace tol

}  // namespace qtrack
