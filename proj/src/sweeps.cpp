#include "qtrack/sweeps.hpp"

#include <cmath>

namespace qtrack {

namespace {

IndicatorPoint indicator_point(double source_length, int n, int flat) {
  const int i = flat / n;
  const int j = flat % n;
  const double theta = (i + 1) * (M_PI / 2.0) / n;
  const double theta_bar = (j + 1) * (M_PI / 2.0) / n;
  const Vec3 s1 = source_length * Vec3(std::sin(theta), 0.0, std::cos(theta));
  const Vec3 s2 = source_length * Vec3(-std::sin(theta), 0.0, std::cos(theta));
  const Vec3 t1(std::sin(theta_bar), 0.0, std::cos(theta_bar));
  const Vec3 t2(-std::sin(theta_bar), 0.0, std::cos(theta_bar));
  const ValidatedProblem p = validate_problem(
      {QubitState(s1), QubitState(s2), QubitState(t1), QubitState(t2), 0.5});
  IndicatorPoint pt;
  pt.theta = theta;
  pt.theta_bar = theta_bar;
  pt.source_fidelity = 1.0 - source_length * source_length * std::sin(theta) * std::sin(theta);
  pt.target_fidelity = std::cos(theta_bar) * std::cos(theta_bar);
  pt.omega = summarize(p).omega;
  return pt;
}

PurificationPoint purification_point(double source_length, int n, double pi1, int i) {
  const double theta = (i + 1) * (M_PI / 2.0) / n;
  const PurificationResult r = purify({source_length, theta, theta, pi1});
  PurificationPoint pt;
  pt.theta = theta;
  pt.omega = r.omega;
  pt.fidelity = r.fidelity;
  if (r.affine) {
    pt.mu1 = r.affine->mu1;
    pt.mu2 = r.affine->mu2;
    pt.mu3 = r.affine->mu3;
    pt.s1 = r.affine->s1;
  } else {
    pt.mu1 = pt.mu2 = pt.mu3 = 1.0;
    pt.s1 = 0.0;
  }
  return pt;
}

StabilizationPoint stabilization_point(double p, int n, int i) {
  const double theta_bar = (i + 1) * (M_PI / 2.0) / (n + 1);  // interior of (0, pi/2)
  const StabilizationResult r = stabilize(theta_bar, p);
  return {theta_bar, r.omega, r.fidelity};
}

}  // namespace

std::vector<IndicatorPoint> indicator_sweep(double source_length, int n) {
  std::vector<IndicatorPoint> out(static_cast<std::size_t>(n) * n);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n * n; ++k) {
    out[static_cast<std::size_t>(k)] = indicator_point(source_length, n, k);
  }
  return out;
}

std::vector<IndicatorPoint> indicator_sweep_serial(double source_length, int n) {
  std::vector<IndicatorPoint> out(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n * n; ++k) {
    out[static_cast<std::size_t>(k)] = indicator_point(source_length, n, k);
  }
  return out;
}

std::vector<PurificationPoint> purification_sweep(double source_length, int n, double pi1) {
  std::vector<PurificationPoint> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = purification_point(source_length, n, pi1, i);
  }
  return out;
}

std::vector<PurificationPoint> purification_sweep_serial(double source_length, int n,
                                                         double pi1) {
  std::vector<PurificationPoint> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = purification_point(source_length, n, pi1, i);
  }
  return out;
}

std::vector<StabilizationPoint> stabilization_sweep(double p, int n) {
  std::vector<StabilizationPoint> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = stabilization_point(p, n, i);
  }
  return out;
}

std::vector<StabilizationPoint> stabilization_sweep_serial(double p, int n) {
  std::vector<StabilizationPoint> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = stabilization_point(p, n, i);
  }
  return out;
}

}  // namespace qtrack
