#pragma once

#include <optional>

#include "qtrack/geometry.hpp"

namespace qtrack {

enum class Procedure { A, B };

inline const char* procedure_name(Procedure p) { return p == Procedure::A ? "A" : "B"; }

// Parameters of the extremal affine Bloch map: contract x,y,z by mu1,mu2,mu3,
// then shift x by s1. Extremality: mu1 = mu2 mu3, s1 = sqrt((1-mu2^2)(1-mu3^2)).
struct AffineParams {
  double mu1, mu2, mu3, s1;
};

struct TrackingSolution {
  Procedure procedure;
  Rotation3 V;                         // takes the source pair into the xz-plane
  std::optional<AffineParams> affine;  // present iff procedure A
  Rotation3 U;                         // takes the compressed states to the target plane
  double fidelity;                     // optimal value of the figure of merit
  double alpha;
  std::optional<double> beta1, beta2;  // undefined when the targets are collinear (proc. B)
  std::optional<double> vartheta;      // in-plane angle of the antiparallel-target branch

  // Bloch images of the two sources under the assembled map.
  Vec3 out1, out2;
};

// Proper rotation V with V R_i = (R_x/R_-) x + ((R_i.R_-)/R_-) z for both
// sources. For collinear sources the plane normal is chosen deterministically.
Rotation3 rotation_v(const GeometrySummary& g);

// Requires omega > 0. All parameters land in [0,1].
AffineParams affine_params(const GeometrySummary& g);

// Requires omega > 0. Maps the compressed source images onto the target plane;
// for collinear targets it aligns x with Rbar_+ instead.
Rotation3 rotation_u_a(const GeometrySummary& g);

struct RotationUB {
  Rotation3 u;
  std::optional<double> vartheta;  // set on the collinear-target branch
};
// Requires omega <= 0.
RotationUB rotation_u_b(const GeometrySummary& g);

// Dispatches on the indicator and assembles the optimal map. The reported
// fidelity is re-derived from the assembled map's action and must agree with
// the closed form within 1e-10.
TrackingSolution solve(const ValidatedProblem& p);

// Figure of merit of an affine Bloch map (M, c) on a problem:
// sum_i pi_i (1 + (M r_i + c) . target_i)/2.
double figure_of_merit(const ValidatedProblem& p, const Mat3& m, const Vec3& c);

}  // namespace qtrack
