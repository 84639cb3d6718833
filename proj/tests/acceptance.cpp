// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qtrack/certificate.hpp"
#include "qtrack/feasibility.hpp"
#include "qtrack/json_io.hpp"
#include "qtrack/oracle.hpp"
#include "qtrack/sweeps.hpp"
#include "test_util.hpp"

using namespace qtrack;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("%s  criterion %2d  %-28s %s\n", pass ? "PASS" : "FAIL", idx, name,
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

ValidatedProblem xz_problem(double len, double theta, double theta_bar, double pi1) {
  return validate_problem({QubitState(len * Vec3(std::sin(theta), 0, std::cos(theta))),
                           QubitState(len * Vec3(-std::sin(theta), 0, std::cos(theta))),
                           QubitState(Vec3(std::sin(theta_bar), 0, std::cos(theta_bar))),
                           QubitState(Vec3(-std::sin(theta_bar), 0, std::cos(theta_bar))),
                           pi1});
}

struct BatchMetrics {
  double worst_min_eig = 0.0;         // most negative eig(F)
  double worst_slackness = 0.0;       // largest ||F K_D||
  double worst_value_gap = 0.0;       // largest |2 x0 - fidelity|
  double worst_choi_eig = 0.0;        // most negative Choi eigenvalue
  double worst_trace_dev = 0.0;
  double worst_completeness = 0.0;
  double worst_extremality = 0.0;     // affine identity residuals
  double worst_choi_rank_leak = 0.0;  // third-largest Choi eigenvalue (proc. A)
  double worst_xi_identity = 0.0;
  int branch_a = 0, branch_b = 0;
};

BatchMetrics run_problem_batch(std::uint64_t seed, int count) {
  BatchMetrics m;
#pragma omp parallel
  {
    BatchMetrics local;
#pragma omp for schedule(dynamic) nowait
    for (int i = 0; i < count; ++i) {
      const ValidatedProblem p = testutil::random_validated(seed, i);
      const GeometrySummary g = summarize(p);
      const TrackingSolution sol = solve(p);
      const DualCertificate cert = build_f(p, sol, dual_coefficients(g, sol));
      local.worst_min_eig = std::min(local.worst_min_eig, cert.min_eigenvalue);
      local.worst_slackness = std::max(local.worst_slackness, cert.slackness_residual);
      local.worst_value_gap = std::max(
          local.worst_value_gap, std::abs(2.0 * cert.coeffs.x0 - sol.fidelity));

      const QuantumChannel ch = choi_of_solution(sol);
      const CptpReport rep = cptp_check(ch);
      local.worst_choi_eig = std::min(local.worst_choi_eig, rep.min_choi_eigenvalue);
      local.worst_trace_dev = std::max(local.worst_trace_dev, rep.trace_preservation_residual);
      local.worst_completeness =
          std::max(local.worst_completeness, rep.kraus_completeness_residual);

      if (sol.procedure == Procedure::A) {
        ++local.branch_a;
        const AffineParams& a = *sol.affine;
        local.worst_extremality = std::max(
            {local.worst_extremality, std::abs(a.mu1 - a.mu2 * a.mu3),
             std::abs(a.s1 - std::sqrt((1 - a.mu2 * a.mu2) * (1 - a.mu3 * a.mu3)))});
        Eigen::SelfAdjointEigenSolver<Mat4c> es(0.5 * (ch.choi + ch.choi.adjoint()));
        local.worst_choi_rank_leak =
            std::max(local.worst_choi_rank_leak, std::abs(es.eigenvalues()(1)));
      } else {
        ++local.branch_b;
      }

      local.worst_xi_identity = std::max(
          local.worst_xi_identity,
          std::abs(g.Xi * g.Xi + g.xi * g.xi -
                   g.r_minus.squaredNorm() * g.rbar_plus.squaredNorm() * g.gamma_b * g.gamma_b));
    }
#pragma omp critical
    {
      m.worst_min_eig = std::min(m.worst_min_eig, local.worst_min_eig);
      m.worst_slackness = std::max(m.worst_slackness, local.worst_slackness);
      m.worst_value_gap = std::max(m.worst_value_gap, local.worst_value_gap);
      m.worst_choi_eig = std::min(m.worst_choi_eig, local.worst_choi_eig);
      m.worst_trace_dev = std::max(m.worst_trace_dev, local.worst_trace_dev);
      m.worst_completeness = std::max(m.worst_completeness, local.worst_completeness);
      m.worst_extremality = std::max(m.worst_extremality, local.worst_extremality);
      m.worst_choi_rank_leak = std::max(m.worst_choi_rank_leak, local.worst_choi_rank_leak);
      m.worst_xi_identity = std::max(m.worst_xi_identity, local.worst_xi_identity);
      m.branch_a += local.branch_a;
      m.branch_b += local.branch_b;
    }
  }
  return m;
}

void criterion_1_and_2_and_10(const BatchMetrics& m) {
  const bool c1 = m.worst_min_eig >= -1e-9 && m.worst_slackness <= 1e-9 &&
                  m.worst_value_gap <= 1e-10 && m.branch_a >= 100 && m.branch_b >= 100;
  report(1, "optimality certificate", c1,
         fmt("min eig %.2e, slackness %.2e, value gap %.2e", m.worst_min_eig,
             m.worst_slackness, m.worst_value_gap) +
             fmt(" (A/B: %.0f/%.0f)", m.branch_a, m.branch_b));

  const bool c2 = m.worst_choi_eig >= -1e-10 && m.worst_trace_dev <= 1e-12 &&
                  m.worst_completeness <= 1e-12 && m.worst_extremality <= 1e-12 &&
                  m.worst_choi_rank_leak <= 1e-10;
  report(2, "CPTP + extremality", c2,
         fmt("choi eig %.2e, trace dev %.2e, rank leak %.2e", m.worst_choi_eig,
             m.worst_trace_dev, m.worst_choi_rank_leak));

  // Lemma 1 on 10^4 fresh random pairs
  SplitMix64 rng(1001);
  bool lemma = true;
  int pairs = 0;
  while (pairs < 10000) {
    const Vec3 r1 = rng.uniform() * testutil::random_unit(rng);
    const Vec3 r2 = rng.uniform() * testutil::random_unit(rng);
    if ((r1 - r2).norm() <= 1e-10) continue;
    lemma = lemma && (r1 - r2).squaredNorm() > r1.cross(r2).squaredNorm();
    ++pairs;
  }
  // characteristic polynomial roots vs eigenvalues, 500 problems per branch
  int na = 0, nb = 0;
  double worst_a = 0.0, worst_b = 0.0;
  bool roots_ok = true;
  for (int i = 0; na < 500 || nb < 500; ++i) {
    if (i >= 20000) {
      roots_ok = false;
      break;
    }
    const ValidatedProblem p = testutil::random_validated(1010, i);
    const GeometrySummary g = summarize(p);
    const bool is_a = g.omega > 0.0;
    if (is_a ? na >= 500 : nb >= 500) continue;
    const TrackingSolution sol = solve(p);
    const DualCertificate cert = build_f(p, sol, dual_coefficients(g, sol));
    const CharPolyReport cp = char_poly_check(cert, g, sol);
    roots_ok = roots_ok && cp.roots_match && cp.sign_conditions;
    (is_a ? worst_a : worst_b) = std::max(is_a ? worst_a : worst_b, cp.max_deviation);
    (is_a ? na : nb)++;
  }
  const bool c10 = m.worst_xi_identity <= 1e-10 && lemma && roots_ok && worst_a <= 1e-8 &&
                   worst_b <= 1e-8;
  report(10, "algebraic identities", c10,
         fmt("xi identity %.2e, root dev A %.2e / B %.2e", m.worst_xi_identity, worst_a,
             worst_b));
}

void criterion_3() {
  const int problems = 100;
  const int samples = 100000;
  double worst_gap = 0.0;
  int climb_hits = 0;
  for (int i = 0; i < problems; ++i) {
    const ValidatedProblem p = testutil::random_validated(3003, i);
    OracleConfig cfg;
    cfg.seed = 50000 + static_cast<std::uint64_t>(i);
    cfg.n_samples = samples;
    const OracleResult r = oracle_max(p, cfg);
    worst_gap = std::min(worst_gap, r.gap);
    if (r.closed_form - r.best_climbed <= 1e-4) ++climb_hits;
  }
  const bool pass = worst_gap >= -1e-9 && climb_hits >= 95;
  report(3, "oracle bound (slow suite)", pass,
         fmt("min gap %.2e, climb hits %.0f/100", worst_gap, double(climb_hits)));
}

void criterion_4() {
  SplitMix64 rng(4004);
  double worst = 0.0;
  bool branch_ok = true;
  int count = 0;
  while (count < 1000) {
    const Vec3 s1 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    const Vec3 s2 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    if ((s1 - s2).norm() < 1e-4) continue;
    const double p1 = 0.02 + 0.96 * rng.uniform();
    const DiscriminationResult r = discriminate(QubitState(s1), QubitState(s2), p1);
    worst = std::max(worst, std::abs(r.p_track - r.p_helstrom));
    ++count;
  }
  count = 0;
  while (count < 1000) {
    const Vec3 s1 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    const Vec3 s2 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    if ((s1 - s2).norm() < 1e-4) continue;
    const DiscriminationResult r = discriminate(QubitState(s1), QubitState(s2), 0.5);
    branch_ok = branch_ok && r.t_indicator <= 0.0;
    ++count;
  }
  report(4, "Helstrom equivalence", worst <= 1e-12 && branch_ok,
         fmt("max |P_track - P_Helstrom| = %.2e", worst));
}

void criterion_5() {
  const int n = 50;
  const double priors[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
  double worst_perfect = 0.0, worst_formula = 0.0;
  bool strictly_below_one = true;
  for (double pi1 : priors) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        const double theta = i * (M_PI / 2) / n;
        const double theta_bar = j * (M_PI / 2) / n;
        const double fid = solve(xz_problem(1.0, theta, theta_bar, pi1)).fidelity;
        if (theta >= theta_bar) {
          worst_perfect = std::max(worst_perfect, std::abs(fid - 1.0));
        } else {
          const double pi2 = 1.0 - pi1;
          const double expected =
              0.5 + 0.5 * std::sqrt(pi1 * pi1 + pi2 * pi2 +
                                    2 * pi1 * pi2 * std::cos(2 * (theta - theta_bar)));
          worst_formula = std::max(worst_formula, std::abs(fid - expected));
          strictly_below_one = strictly_below_one && fid < 1.0 - 1e-10;
        }
      }
    }
  }
  report(5, "perfect tracking", worst_perfect <= 1e-10 && worst_formula <= 1e-10 &&
                                    strictly_below_one,
         fmt("|fid-1| %.2e, formula dev %.2e", worst_perfect, worst_formula));
}

void criterion_6() {
  double worst = 0.0;
  bool omega_pos = true;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      const double theta_bar = i * (M_PI / 2) / 21;
      const double p = j * 0.5 / 20;
      const StabilizationResult r = stabilize(theta_bar, p);
      const double cb2 = std::cos(theta_bar) * std::cos(theta_bar);
      const double sb2 = std::sin(theta_bar) * std::sin(theta_bar);
      const double closed =
          0.5 + 0.5 * std::sqrt(cb2 + sb2 * sb2 / (1.0 - (1 - 2 * p) * (1 - 2 * p) * cb2));
      worst = std::max(worst, std::abs(r.fidelity - closed));
      omega_pos = omega_pos && r.omega > 0.0;
    }
  }
  const double near_perfect = stabilize(M_PI / 4, 1e-6).fidelity;
  report(6, "stabilization", worst <= 1e-10 && omega_pos && near_perfect >= 1.0 - 1e-4,
         fmt("closed-form dev %.2e, fid(p=1e-6) = %.6f", worst, near_perfect));
}

void criterion_7() {
  double worst = 0.0;
  for (double len : {0.6, 0.8, 0.9}) {
    for (int i = 1; i <= 100; ++i) {
      const double theta = i * (M_PI / 2) / 100;
      const double rc = len * len * std::cos(theta) * std::cos(theta);
      const double rs = len * len * std::sin(theta) * std::sin(theta);
      const double ctb = std::cos(theta);
      const double omega =
          2.0 * (ctb * ctb - len * len * std::cos(theta) * ctb);  // theta_bar = theta
      double closed;
      if (omega > 0.0) {
        closed = 0.5 + 0.5 * std::sqrt(ctb * ctb + rs * std::sin(theta) * std::sin(theta) /
                                                       (1.0 - rc));
      } else {
        closed = 0.5 + 0.5 * len;
      }
      const double fid = solve(xz_problem(len, theta, theta, 0.5)).fidelity;
      worst = std::max(worst, std::abs(fid - closed));
    }
  }
  const double benchmark = solve(xz_problem(0.8, M_PI / 3, M_PI / 3, 0.5)).fidelity;
  report(7, "purification", worst <= 1e-10 && std::abs(benchmark - 0.911877) <= 1e-5,
         fmt("closed-form dev %.2e, fid(0.8, pi/3) = %.6f", worst, benchmark));
}

void criterion_8() {
  const CloningResult r = clone({M_PI / 8, 0.5});
  const double expected = 0.5 + 0.5 * std::cos(M_PI / 12);
  const double via_tracking =
      solve(xz_problem(1.0, std::acos(std::sin(M_PI / 4)),
                       std::acos(std::sin(M_PI / 4) * std::sin(M_PI / 4)), 0.5))
          .fidelity;
  bool omega_ok = true;
  for (int i = 0; i < 50; ++i) {
    omega_ok = omega_ok && clone({i * (M_PI / 4) / 50, 0.5}).omega_tilde <= 1e-12;
  }
  const bool pass = std::abs(r.fidelity - expected) <= 1e-10 &&
                    std::abs(via_tracking - expected) <= 1e-10 && omega_ok;
  report(8, "cloning", pass,
         fmt("closed %.12f vs tracking %.12f", r.fidelity, via_tracking));
}

void criterion_9() {
  const int n = 100;
  const auto pure = indicator_sweep(1.0, n);
  bool sign_ok = true;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double omega = pure[static_cast<std::size_t>(i) * n + j].omega;
      if (i > j) {
        sign_ok = sign_ok && omega > 1e-12;
      } else {
        sign_ok = sign_ok && omega <= 1e-12;
      }
    }
  }
  bool contains_ok = true;
  for (double len : {0.9, 0.8}) {
    const auto mixed = indicator_sweep(len, n);
    int strict = 0;
    for (std::size_t k = 0; k < mixed.size(); ++k) {
      if (pure[k].omega > 1e-12 && !(mixed[k].omega > 0.0)) contains_ok = false;
      if (mixed[k].omega > 1e-12 && pure[k].omega <= 1e-12) ++strict;
    }
    contains_ok = contains_ok && strict > 0;
  }
  report(9, "indicator geometry", sign_ok && contains_ok,
         std::string("sign grid ") + (sign_ok ? "ok" : "bad") + ", containment " +
             (contains_ok ? "strict" : "violated"));
}

void criterion_11() {
  const double a = M_PI / 4;
  const QubitState s1(Vec3(std::cos(a), 0, std::sin(a)));
  const QubitState s2(Vec3(std::cos(a), 0, -std::sin(a)));
  const QuantumChannel noise = dephasing(0.3);
  const ValidatedProblem prob =
      validate_problem({s1, s2, apply(noise, s1), apply(noise, s2), 0.5});
  const bool feasible = alberti_uhlmann(prob).feasible;
  const TrackingSolution sol = solve(prob);
  const double excess = sol.fidelity - perfect_value(prob);
  const double image_dist = std::min((sol.out1 - prob.target1().bloch()).norm(),
                                     (sol.out2 - prob.target2().bloch()).norm());
  report(11, "mixed-target departure", feasible && excess > 1e-3 && image_dist > 1e-3,
         fmt("excess %.4f, image distance %.4f", excess, image_dist));
}

}  // namespace

int main() {
  const BatchMetrics batch = run_problem_batch(2002, 1000);
  criterion_1_and_2_and_10(batch);
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_11();
  std::printf("%s\n", g_failures == 0 ? "acceptance: all criteria passed"
                                      : "acceptance: FAILURES present");
  return g_failures == 0 ? 0 : 1;
}
