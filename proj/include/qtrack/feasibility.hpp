#pragma once

#include <vector>

#include "qtrack/bloch.hpp"

namespace qtrack {

enum class FeasibilityMethod { corollary, grid };

struct FeasibilityReport {
  bool feasible;
  std::optional<double> witness_t;  // a t violating the criterion, when infeasible
  double margin;                    // min over tested t of rhs - lhs
  FeasibilityMethod method;
};

struct MarginSample {
  double t, lhs, rhs;
};

// Alberti-Uhlmann criterion ||rho1bar - t rho2bar|| <= ||rho1 - t rho2||,
// evaluated on t = 0 plus a 4001-point logarithmic grid over [1e-4, 1e4].
// Priors are irrelevant to the criterion.
FeasibilityReport alberti_uhlmann(const ValidatedProblem& p);

// The margin curve behind the grid check.
std::vector<MarginSample> alberti_uhlmann_curve(const ValidatedProblem& p);

// Exact criterion for pure distinct targets: feasible iff both sources are
// pure and the source Bloch angle is at least the target Bloch angle.
FeasibilityReport pure_target_corollary(const ValidatedProblem& p);

// Figure-of-merit value a perfect tracker would attain:
// pi1 Tr[target1^2] + pi2 Tr[target2^2].
double perfect_value(const ValidatedProblem& p);

}  // namespace qtrack
