#pragma once

#include <utility>
#include <vector>

#include "qtrack/tracker.hpp"

namespace qtrack {

// Every preset evaluates its closed form and cross-checks it against the
// generic solve() pipeline on explicitly constructed Bloch vectors; a
// disagreement beyond 1e-10 raises Errc::internal_inconsistency.

struct DiscriminationResult {
  double p_track;
  double p_helstrom;
  double t_indicator;  // (p1-p2)^2 - ||p1 R1 - p2 R2||^2
  Procedure branch;
};

// Minimum-error discrimination as tracking onto |0><0|, |1><1|.
DiscriminationResult discriminate(const QubitState& rho1, const QubitState& rho2, double p1);

struct PurificationSpec {
  double source_length;    // R in (0, 1]
  double theta;            // source half-angle in (0, pi/2]
  double theta_bar;        // target half-angle in [0, pi/2]
  double pi1 = 0.5;
};

struct PurificationResult {
  double omega;
  double fidelity;
  std::optional<AffineParams> affine;  // present on the non-unitary branch
};

PurificationResult purify(const PurificationSpec& spec);

struct StabilizationResult {
  double omega;
  double fidelity;
};

// Optimal correction of dephasing noise of strength p on the pure pair with
// half-angle theta_bar in (0, pi/2); always lands on the non-unitary branch.
StabilizationResult stabilize(double theta_bar, double p);

struct CloningSpec {
  double phi;  // in [0, pi/4)
  double pi1 = 0.5;
};

struct CloningResult {
  double omega_tilde;  // 2(theta - theta_bar) <= 0 for the admissible range
  double fidelity;
};

// State-dependent cloning reduced to pure-state tracking.
CloningResult clone(const CloningSpec& spec);

struct PureTrackingResult {
  double omega;
  double fidelity;
};

// Pure sources at half-angle theta to pure targets at half-angle theta_bar.
PureTrackingResult pure_tracking(double theta, double theta_bar, double pi1);

using WeightedState = std::pair<QubitState, double>;

// Reduces the N-state figure of merit to a two-state problem: group priors
// are the weight sums, group sources the weight-normalized Bloch averages.
TrackingProblem aggregate_sources(const std::vector<WeightedState>& group1,
                                  const std::vector<WeightedState>& group2,
                                  const QubitState& target1, const QubitState& target2);

}  // namespace qtrack
