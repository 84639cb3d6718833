#pragma once

#include <vector>

#include "qtrack/applications.hpp"

namespace qtrack {

// Grid kernels behind the CLI sweeps and the figure reproductions. Each point
// is an independent evaluation written to its own slot, so the OpenMP
// versions return bit-identical results to the serial references.

struct IndicatorPoint {
  double theta, theta_bar;
  double source_fidelity;  // 1 - R^2 sin^2(theta), overlap of the source pair
  double target_fidelity;  // cos^2(theta_bar)
  double omega;
};

// n x n grid over (0, pi/2]^2: sources of length R at half-angle theta, pure
// targets at half-angle theta_bar, uniform priors. Row-major in theta.
std::vector<IndicatorPoint> indicator_sweep(double source_length, int n);
std::vector<IndicatorPoint> indicator_sweep_serial(double source_length, int n);

struct PurificationPoint {
  double theta;
  double omega;
  double fidelity;
  double mu1, mu2, mu3, s1;  // identity affine on the unitary branch
};

// theta = theta_bar purification family over (0, pi/2], n points.
std::vector<PurificationPoint> purification_sweep(double source_length, int n,
                                                  double pi1 = 0.5);
std::vector<PurificationPoint> purification_sweep_serial(double source_length, int n,
                                                         double pi1 = 0.5);

struct StabilizationPoint {
  double theta_bar;
  double omega;
  double fidelity;
};

// theta_bar sweep over (0, pi/2) at fixed dephasing strength, n points.
std::vector<StabilizationPoint> stabilization_sweep(double p, int n);
std::vector<StabilizationPoint> stabilization_sweep_serial(double p, int n);

}  // namespace qtrack
