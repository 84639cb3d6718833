#include "qtrack/oracle.hpp"

#include <array>
#include <cmath>

namespace qtrack {

namespace {

constexpr int kRestarts = 20;
constexpr double kStepShrink = 0.85;
constexpr int kGoldenEvals = 16;

struct Isometry {
  // columns of the 8x2 isometry, environment-major blocks
  std::array<Mat2c, 4> kraus;
};

Isometry random_isometry(SplitMix64& rng) {
  Eigen::Matrix<cplx, 8, 2> w;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 2; ++j) w(i, j) = cplx(rng.normal(), rng.normal());
  w.col(0).normalize();
  w.col(1) -= w.col(0).dot(w.col(1)) * w.col(0);
  w.col(1) -= w.col(0).dot(w.col(1)) * w.col(0);  // second pass for orthogonality
  w.col(1).normalize();
  Isometry iso;
  for (int e = 0; e < 4; ++e) {
    iso.kraus[e] << w(e, 0), w(e, 1), w(4 + e, 0), w(4 + e, 1);
  }
  return iso;
}

// affine action of a Kraus set, enough to evaluate the figure of merit
void affine_of_kraus(const std::array<Mat2c, 4>& ops, Mat3& m, Vec3& c) {
  Mat2c unital = Mat2c::Zero();
  for (const auto& k : ops) unital += k * k.adjoint();
  for (int j = 0; j < 3; ++j) c(j) = 0.5 * (unital * pauli(j + 1)).trace().real();
  for (int k = 0; k < 3; ++k) {
    Mat2c img = Mat2c::Zero();
    for (const auto& op : ops) img += op * pauli(k + 1) * op.adjoint();
    for (int j = 0; j < 3; ++j) m(j, k) = 0.5 * (img * pauli(j + 1)).trace().real();
  }
}

double sample_value(const ValidatedProblem& p, std::uint64_t seed, int index) {
  SplitMix64 rng(SplitMix64::substream(seed, static_cast<std::uint64_t>(index)));
  const Isometry iso = random_isometry(rng);
  Mat3 m;
  Vec3 c;
  affine_of_kraus(iso.kraus, m, c);
  return figure_of_merit(p, m, c);
}

// extreme-map parameters: ZYZ angles for V and U plus mu2, mu3
struct ClimbPoint {
  std::array<double, 8> x;
};

Rotation3 zyz(double a, double b, double c) {
  return (Eigen::AngleAxisd(a, Vec3::UnitZ()) * Eigen::AngleAxisd(b, Vec3::UnitY()) *
          Eigen::AngleAxisd(c, Vec3::UnitZ()))
      .toRotationMatrix();
}

double climb_value(const ValidatedProblem& p, const ClimbPoint& pt) {
  const Rotation3 v = zyz(pt.x[0], pt.x[1], pt.x[2]);
  const Rotation3 u = zyz(pt.x[3], pt.x[4], pt.x[5]);
  const double mu2 = pt.x[6];
  const double mu3 = pt.x[7];
  const double s1 = std::sqrt(std::max(0.0, (1.0 - mu2 * mu2) * (1.0 - mu3 * mu3)));
  const Vec3 scale(mu2 * mu3, mu2, mu3);
  const Mat3 m = u * scale.asDiagonal() * v;
  const Vec3 c = u * Vec3(s1, 0.0, 0.0);
  return figure_of_merit(p, m, c);
}

// golden-section maximization of coordinate `k` over [lo, hi]
void golden_coordinate(const ValidatedProblem& p, ClimbPoint& pt, double& best, int k,
                       double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  ClimbPoint probe = pt;
  probe.x[k] = x1;
  double f1 = climb_value(p, probe);
  probe.x[k] = x2;
  double f2 = climb_value(p, probe);
  for (int i = 0; i < kGoldenEvals; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      probe.x[k] = x2;
      f2 = climb_value(p, probe);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      probe.x[k] = x1;
      f1 = climb_value(p, probe);
    }
  }
  const double xbest = f1 > f2 ? x1 : x2;
  probe.x[k] = xbest;
  const double fbest = climb_value(p, probe);
  if (fbest > best) {
    best = fbest;
    pt.x[k] = xbest;
  }
}

struct ClimbOutcome {
  double value;
  ClimbPoint point;
};

ClimbOutcome climb_restart(const ValidatedProblem& p, const OracleConfig& cfg,
                           std::uint64_t stream) {
  SplitMix64 rng(stream);
  ClimbPoint pt;
  for (int k = 0; k < 6; ++k) pt.x[k] = 2.0 * M_PI * rng.uniform();
  pt.x[6] = rng.uniform();
  pt.x[7] = rng.uniform();
  double best = climb_value(p, pt);
  double step = cfg.climb_step;
  for (int sweep = 0; sweep < cfg.n_climb_iters; ++sweep) {
    for (int k = 0; k < 8; ++k) {
      const double half = step * (k < 6 ? M_PI : 0.5);
      double lo = pt.x[k] - half;
      double hi = pt.x[k] + half;
      if (k >= 6) {
        lo = std::max(0.0, lo);
        hi = std::min(1.0, hi);
      }
      golden_coordinate(p, pt, best, k, lo, hi);
    }
    step *= kStepShrink;
  }
  return {best, pt};
}

}  // namespace

QuantumChannel random_cptp(SplitMix64& rng) {
  const Isometry iso = random_isometry(rng);
  return QuantumChannel::from_kraus(
      {iso.kraus[0], iso.kraus[1], iso.kraus[2], iso.kraus[3]});
}

std::vector<double> oracle_sample_values(const ValidatedProblem& p, std::uint64_t seed,
                                         int n_samples) {
  std::vector<double> values(static_cast<std::size_t>(n_samples));
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_samples; ++i) {
    values[static_cast<std::size_t>(i)] = sample_value(p, seed, i);
  }
  return values;
}

std::vector<double> oracle_sample_values_serial(const ValidatedProblem& p,
                                                std::uint64_t seed, int n_samples) {
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  for (int i = 0; i < n_samples; ++i) {
    values[static_cast<std::size_t>(i)] = sample_value(p, seed, i);
  }
  return values;
}

OracleResult oracle_max(const ValidatedProblem& p, const OracleConfig& cfg) {
  if (cfg.n_samples < 1) {
    throw Error(Errc::out_of_range, "n_samples must be at least 1");
  }
  OracleResult res;
  res.closed_form = solve(p).fidelity;

  const std::vector<double> values = oracle_sample_values(p, cfg.seed, cfg.n_samples);
  int best_idx = 0;
  for (int i = 1; i < cfg.n_samples; ++i) {
    if (values[static_cast<std::size_t>(i)] > values[static_cast<std::size_t>(best_idx)]) {
      best_idx = i;
    }
  }
  res.best_sampled = values[static_cast<std::size_t>(best_idx)];

  // climb restarts use a seed stream disjoint from the sampling streams
  std::array<ClimbOutcome, kRestarts> outcomes;
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < kRestarts; ++r) {
    outcomes[static_cast<std::size_t>(r)] =
        climb_restart(p, cfg, SplitMix64::substream(~cfg.seed, static_cast<std::uint64_t>(r)));
  }
  int best_restart = 0;
  for (int r = 1; r < kRestarts; ++r) {
    if (outcomes[static_cast<std::size_t>(r)].value >
        outcomes[static_cast<std::size_t>(best_restart)].value) {
      best_restart = r;
    }
  }
  res.best_climbed = outcomes[static_cast<std::size_t>(best_restart)].value;

  if (res.best_sampled >= res.best_climbed) {
    res.best_value = res.best_sampled;
    SplitMix64 rng(SplitMix64::substream(cfg.seed, static_cast<std::uint64_t>(best_idx)));
    res.best_channel = random_cptp(rng);
  } else {
    res.best_value = res.best_climbed;
    const ClimbPoint& pt = outcomes[static_cast<std::size_t>(best_restart)].point;
    TrackingSolution sol;
    sol.procedure = Procedure::A;
    sol.V = zyz(pt.x[0], pt.x[1], pt.x[2]);
    sol.U = zyz(pt.x[3], pt.x[4], pt.x[5]);
    const double mu2 = pt.x[6];
    const double mu3 = pt.x[7];
    sol.affine = AffineParams{
        mu2 * mu3, mu2, mu3,
        std::sqrt(std::max(0.0, (1.0 - mu2 * mu2) * (1.0 - mu3 * mu3)))};
    res.best_channel = choi_of_solution(sol);
  }
  res.gap = res.closed_form - res.best_value;
  return res;
}

}  // namespace qtrack
