#include "qtrack/applications.hpp"

#include <cmath>

#include "qtrack/channel.hpp"

namespace qtrack {

namespace {

// Sources of length R at half-angle theta and pure targets at half-angle
// theta_bar, both pairs in the xz-plane symmetric about z. Unitary invariance
// of the optimum makes this embedding lossless.
ValidatedProblem xz_problem(double source_length, double theta, double theta_bar,
                            double pi1) {
  const Vec3 s1 = source_length * Vec3(std::sin(theta), 0.0, std::cos(theta));
  const Vec3 s2 = source_length * Vec3(-std::sin(theta), 0.0, std::cos(theta));
  const Vec3 t1(std::sin(theta_bar), 0.0, std::cos(theta_bar));
  const Vec3 t2(-std::sin(theta_bar), 0.0, std::cos(theta_bar));
  return validate_problem(
      {QubitState(s1), QubitState(s2), QubitState(t1), QubitState(t2), pi1});
}

void check_against_pipeline(double closed_form, double pipeline) {
  if (std::abs(closed_form - pipeline) > 1e-10) {
    throw Error(Errc::internal_inconsistency,
                "closed-form fidelity disagrees with the generic pipeline");
  }
}

}  // namespace

DiscriminationResult discriminate(const QubitState& rho1, const QubitState& rho2,
                                  double p1) {
  if (!(p1 > 0.0 && p1 < 1.0)) {
    throw Error(Errc::invalid_prior, "p1 must lie strictly between 0 and 1");
  }
  const double p2 = 1.0 - p1;
  DiscriminationResult res;
  const Vec3 weighted = p1 * rho1.bloch() - p2 * rho2.bloch();
  res.t_indicator = (p1 - p2) * (p1 - p2) - weighted.squaredNorm();
  res.branch = res.t_indicator > 0.0 ? Procedure::A : Procedure::B;
  res.p_track = res.t_indicator > 0.0 ? 0.5 + 0.5 * std::abs(p1 - p2)
                                      : 0.5 + 0.5 * weighted.norm();
  // Helstrom: 1/2 + 1/2 ||p1 rho1 - p2 rho2||_tr
  res.p_helstrom =
      0.5 + 0.5 * trace_norm_diff(p1 * rho1.density(), rho2.density(), p2);

  if (std::abs(res.p_track - res.p_helstrom) > 1e-12) {
    throw Error(Errc::internal_inconsistency,
                "tracking success probability deviates from the Helstrom bound");
  }
  const ValidatedProblem problem = validate_problem(
      {rho1, rho2, QubitState(Vec3(0, 0, 1)), QubitState(Vec3(0, 0, -1)), p1});
  check_against_pipeline(res.p_track, solve(problem).fidelity);
  return res;
}

PurificationResult purify(const PurificationSpec& spec) {
  if (!(spec.source_length > 0.0 && spec.source_length <= 1.0)) {
    throw Error(Errc::out_of_range, "source length must lie in (0, 1]");
  }
  if (!(spec.theta > 0.0 && spec.theta <= M_PI / 2.0)) {
    throw Error(Errc::out_of_range, "theta must lie in (0, pi/2]");
  }
  if (!(spec.theta_bar >= 0.0 && spec.theta_bar <= M_PI / 2.0)) {
    throw Error(Errc::out_of_range, "theta_bar must lie in [0, pi/2]");
  }
  if (!(spec.pi1 > 0.0 && spec.pi1 < 1.0)) {
    throw Error(Errc::invalid_prior, "pi1 must lie strictly between 0 and 1");
  }
  const double pi1 = spec.pi1;
  const double pi2 = 1.0 - pi1;
  const double rc = spec.source_length * spec.source_length * std::cos(spec.theta) *
                    std::cos(spec.theta);
  const double rs = spec.source_length * spec.source_length * std::sin(spec.theta) *
                    std::sin(spec.theta);
  const double delta = (pi1 - pi2) * (pi1 - pi2);
  const double c2tb = std::cos(2.0 * spec.theta_bar);
  const double pi_plus = pi1 * pi1 + pi2 * pi2 + 2.0 * pi1 * pi2 * c2tb;
  const double pi_minus = pi1 * pi1 + pi2 * pi2 - 2.0 * pi1 * pi2 * c2tb;

  const double cross_product =
      std::sqrt(std::max(0.0, rs * rc * (pi_plus * pi_minus - delta)));
  const double t = (1.0 - rc) * pi_plus - rs * pi_minus;
  const double s = std::sqrt(std::max(
      0.0, std::pow((1.0 - rc) * pi_plus + rs * pi_minus, 2) - 4.0 * delta * rs * (1.0 - rc)));
  // cancellation-free S+T via S^2 - T^2 = 4 rs (1-rc) (Pi+ Pi- - delta)
  double s_plus_t;
  if (t > 0.0) {
    s_plus_t = s + t;
  } else {
    const double denom = s - t;
    s_plus_t = denom > 0.0 ? 4.0 * rs * (1.0 - rc) * (pi_plus * pi_minus - delta) / denom
                           : 0.0;
  }

  PurificationResult res;
  res.omega = s_plus_t - 2.0 * cross_product;
  if (res.omega > 0.0) {
    // gamma_a with Rbar_+^2 = Pi_+ and R_-^2 Rbar_x^2 = rs (Pi_+ Pi_- - delta)
    res.fidelity = 0.5 + 0.5 * std::sqrt(pi_plus + 2.0 * rs * (pi_plus * pi_minus - delta) /
                                                       s_plus_t);
  } else {
    res.fidelity = 0.5 + 0.5 * std::sqrt(std::max(0.0, pi_plus - t + 2.0 * cross_product));
  }

  const TrackingSolution sol =
      solve(xz_problem(spec.source_length, spec.theta, spec.theta_bar, pi1));
  check_against_pipeline(res.fidelity, sol.fidelity);
  res.affine = sol.affine;
  return res;
}

StabilizationResult stabilize(double theta_bar, double p) {
  if (!(theta_bar > 0.0 && theta_bar < M_PI / 2.0)) {
    throw Error(Errc::out_of_range, "theta_bar must lie in (0, pi/2)");
  }
  // dephasing() validates p
  const QuantumChannel noise = dephasing(p);
  const QubitState pure1(Vec3(std::cos(theta_bar), 0.0, std::sin(theta_bar)));
  const QubitState pure2(Vec3(std::cos(theta_bar), 0.0, -std::sin(theta_bar)));
  const ValidatedProblem problem = validate_problem(
      {apply(noise, pure1), apply(noise, pure2), pure1, pure2, 0.5});

  const double cb2 = std::cos(theta_bar) * std::cos(theta_bar);
  const double sb2 = std::sin(theta_bar) * std::sin(theta_bar);
  const double shrink = 1.0 - 2.0 * p;
  const double noisy_len2 = shrink * shrink * cb2 + sb2;

  StabilizationResult res;
  res.omega = 2.0 * cb2 * (1.0 - noisy_len2 + 2.0 * p * sb2);
  res.fidelity = 0.5 + 0.5 * std::sqrt(cb2 + sb2 * sb2 / (1.0 - shrink * shrink * cb2));

  const TrackingSolution sol = solve(problem);
  if (sol.procedure != Procedure::A) {
    throw Error(Errc::internal_inconsistency,
                "stabilization must land on the non-unitary branch");
  }
  check_against_pipeline(res.fidelity, sol.fidelity);
  return res;
}

CloningResult clone(const CloningSpec& spec) {
  if (!(spec.phi >= 0.0 && spec.phi < M_PI / 4.0)) {
    throw Error(Errc::out_of_range, "phi must lie in [0, pi/4)");
  }
  if (!(spec.pi1 > 0.0 && spec.pi1 < 1.0)) {
    throw Error(Errc::invalid_prior, "pi1 must lie strictly between 0 and 1");
  }
  // overlaps <s1|s2> = sin(2 phi), <t1|t2> = sin^2(2 phi) are the cosines of
  // the Bloch half-angles
  const double s2p = std::sin(2.0 * spec.phi);
  const double theta = std::acos(s2p);
  const double theta_bar = std::acos(s2p * s2p);
  CloningResult res;
  res.omega_tilde = 2.0 * (theta - theta_bar);
  const double pi1 = spec.pi1;
  const double pi2 = 1.0 - pi1;
  res.fidelity = 0.5 + 0.5 * std::sqrt(pi1 * pi1 + pi2 * pi2 +
                                       2.0 * pi1 * pi2 * std::cos(res.omega_tilde));
  // near phi = pi/4 the two preparations merge and the reduced tracking
  // problem degenerates; the closed form stays finite (fidelity -> 1)
  if (2.0 * std::sin(theta) > tol::distinct) {
    const TrackingSolution sol = solve(xz_problem(1.0, theta, theta_bar, pi1));
    check_against_pipeline(res.fidelity, sol.fidelity);
  }
  return res;
}

PureTrackingResult pure_tracking(double theta, double theta_bar, double pi1) {
  if (!(theta > 0.0 && theta <= M_PI / 2.0) || !(theta_bar > 0.0 && theta_bar <= M_PI / 2.0)) {
    throw Error(Errc::out_of_range, "half-angles must lie in (0, pi/2]");
  }
  if (!(pi1 > 0.0 && pi1 < 1.0)) {
    throw Error(Errc::invalid_prior, "pi1 must lie strictly between 0 and 1");
  }
  const double pi2 = 1.0 - pi1;
  PureTrackingResult res;
  res.omega = 8.0 * pi1 * pi2 * std::sin(theta) * std::cos(theta_bar) *
              std::sin(theta - theta_bar);
  if (theta >= theta_bar) {
    res.fidelity = 1.0;
  } else {
    res.fidelity = 0.5 + 0.5 * std::sqrt(pi1 * pi1 + pi2 * pi2 +
                                         2.0 * pi1 * pi2 * std::cos(2.0 * (theta - theta_bar)));
  }
  const TrackingSolution sol = solve(xz_problem(1.0, theta, theta_bar, pi1));
  check_against_pipeline(res.fidelity, sol.fidelity);
  return res;
}

TrackingProblem aggregate_sources(const std::vector<WeightedState>& group1,
                                  const std::vector<WeightedState>& group2,
                                  const QubitState& target1, const QubitState& target2) {
  if (group1.empty() || group2.empty()) {
    throw Error(Errc::empty_group, "both groups must contain at least one state");
  }
  double total = 0.0;
  for (const auto& [state, q] : group1) {
    if (q <= 0.0) throw Error(Errc::weights_not_normalized, "weights must be positive");
    total += q;
  }
  for (const auto& [state, q] : group2) {
    if (q <= 0.0) throw Error(Errc::weights_not_normalized, "weights must be positive");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(Errc::weights_not_normalized, "weights must sum to 1");
  }

  double pi1 = 0.0;
  Vec3 b1 = Vec3::Zero();
  for (const auto& [state, q] : group1) {
    pi1 += q;
    b1 += q * state.bloch();
  }
  double pi2 = 0.0;
  Vec3 b2 = Vec3::Zero();
  for (const auto& [state, q] : group2) {
    pi2 += q;
    b2 += q * state.bloch();
  }
  return TrackingProblem{QubitState(b1 / pi1), QubitState(b2 / pi2), target1, target2, pi1};
}

}  // namespace qtrack
