#pragma once

#include <vector>

#include "qtrack/tracker.hpp"

namespace qtrack {

// A qubit CPTP map in three equivalent representations. The Choi matrix is
// unnormalized (Tr = 2), built on |Psi+> = |00> + |11> with the first tensor
// factor the input and the second the output.
struct QuantumChannel {
  Mat4c choi;
  std::vector<Mat2c> kraus;
  Mat3 affine_m;
  Vec3 affine_c;
  // Index of the Kraus operator carrying the Pauli-Y feedback correction
  // (procedure A only).
  std::optional<int> y_corrected_kraus;

  static QuantumChannel from_kraus(std::vector<Mat2c> ops);
};

struct CptpReport {
  double min_choi_eigenvalue;
  double trace_preservation_residual;    // ||Tr_B(choi) - I||_F
  double kraus_completeness_residual;    // ||sum K^dag K - I||_F
  double cross_representation_residual;  // max output deviation over probe states
  bool choi_psd;
  bool trace_preserving;
  bool kraus_complete;
  bool representations_agree;
  bool pass;
};

Mat4c kron(const Mat2c& a, const Mat2c& b);
Mat2c partial_trace_input(const Mat4c& m);   // trace over the first factor
Mat2c partial_trace_output(const Mat4c& m);  // trace over the second factor

// Choi matrix of the canonical affine map with the given parameters.
Mat4c choi_of_affine(const AffineParams& a);

// Materializes a solution: Choi from the rotated canonical map, Kraus from
// the measurement decomposition, affine from the Bloch-space composition.
// Throws Errc::internal_inconsistency if the CPTP checks fail.
QuantumChannel choi_of_solution(const TrackingSolution& sol);

struct KrausDecomposition {
  std::vector<Mat2c> ops;
  std::optional<int> y_corrected;
};
KrausDecomposition kraus_of_solution(const TrackingSolution& sol);

// Evaluates the channel through its Choi matrix.
QubitState apply(const QuantumChannel& ch, const QubitState& s);

// E(rho) = p Z rho Z + (1-p) rho, p in (0, 1/2].
QuantumChannel dephasing(double p);

QuantumChannel identity_channel();
QuantumChannel depolarizing_channel();  // every input to I/2

CptpReport cptp_check(const QuantumChannel& ch);

}  // namespace qtrack
