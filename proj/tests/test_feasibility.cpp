#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qtrack/channel.hpp"
#include "qtrack/feasibility.hpp"
#include "test_util.hpp"

using namespace qtrack;

namespace {

ValidatedProblem pure_pair_problem(double theta, double theta_bar, double pi1 = 0.5) {
  return validate_problem({QubitState(Vec3(std::sin(theta), 0, std::cos(theta))),
                           QubitState(Vec3(-std::sin(theta), 0, std::cos(theta))),
                           QubitState(Vec3(std::sin(theta_bar), 0, std::cos(theta_bar))),
                           QubitState(Vec3(-std::sin(theta_bar), 0, std::cos(theta_bar))),
                           pi1});
}

}  // namespace

TEST_CASE("identity transformations are feasible") {
  const ValidatedProblem p = pure_pair_problem(0.9, 0.9);
  const FeasibilityReport r = alberti_uhlmann(p);
  CHECK(r.feasible);
  CHECK(r.margin >= -1e-12);
  CHECK(r.method == FeasibilityMethod::grid);
}

TEST_CASE("angle-decreasing pure transformations are feasible") {
  const FeasibilityReport r = alberti_uhlmann(pure_pair_problem(M_PI / 2, M_PI / 4));
  CHECK(r.feasible);
}

TEST_CASE("purification of mixed sources is infeasible") {
  const ValidatedProblem p = validate_problem(
      {QubitState(0.8 * Vec3(std::sin(0.6), 0, std::cos(0.6))),
       QubitState(0.8 * Vec3(-std::sin(0.6), 0, std::cos(0.6))),
       QubitState(Vec3(std::sin(0.6), 0, std::cos(0.6))),
       QubitState(Vec3(-std::sin(0.6), 0, std::cos(0.6))), 0.5});
  const FeasibilityReport grid = alberti_uhlmann(p);
  CHECK(!grid.feasible);
  REQUIRE(grid.witness_t.has_value());
  // the witness indeed violates the inequality
  const double lhs = trace_norm_diff(p.target1().density(), p.target2().density(),
                                     *grid.witness_t);
  const double rhs = trace_norm_diff(p.rho1().density(), p.rho2().density(), *grid.witness_t);
  CHECK(rhs - lhs < -1e-12);

  const FeasibilityReport cor = pure_target_corollary(p);
  CHECK(!cor.feasible);
  CHECK(cor.method == FeasibilityMethod::corollary);
}

TEST_CASE("pure-target corollary branches") {
  CHECK(pure_target_corollary(pure_pair_problem(0.8, 0.8)).feasible);
  CHECK(pure_target_corollary(pure_pair_problem(1.1, 0.6)).feasible);
  CHECK(!pure_target_corollary(pure_pair_problem(0.6, 1.1)).feasible);

  // a mixed source makes any pure-target transformation infeasible
  const ValidatedProblem mixed = validate_problem(
      {QubitState(Vec3(0, 0, 0.99)), QubitState(Vec3(0.8, 0, 0)),
       QubitState(Vec3(0, 0, 1)), QubitState(Vec3(1, 0, 0)), 0.5});
  CHECK(!pure_target_corollary(mixed).feasible);

  const ValidatedProblem mixed_targets = validate_problem(
      {QubitState(Vec3(0, 0, 1)), QubitState(Vec3(1, 0, 0)),
       QubitState(Vec3(0, 0, 0.9)), QubitState(Vec3(0.9, 0, 0)), 0.5});
  CHECK_THROWS_WITH_AS(pure_target_corollary(mixed_targets),
                       doctest::Contains("TargetsNotPure"), Error);

  const ValidatedProblem same_targets = validate_problem(
      {QubitState(Vec3(0, 0, 1)), QubitState(Vec3(1, 0, 0)),
       QubitState(Vec3(0, 1, 0)), QubitState(Vec3(0, 1, 0)), 0.5});
  CHECK_THROWS_WITH_AS(pure_target_corollary(same_targets),
                       doctest::Contains("TargetsIdentical"), Error);
}

TEST_CASE("grid criterion agrees with the corollary on 1000 pure-target problems") {
  SplitMix64 rng(71);
  int count = 0;
  while (count < 1000) {
    const Vec3 s1 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    const Vec3 s2 = testutil::random_bloch(rng, rng.uniform() < 0.5);
    const Vec3 t1 = testutil::random_unit(rng);
    const Vec3 t2 = testutil::random_unit(rng);
    if ((s1 - s2).norm() < 1e-3 || (t1 - t2).norm() < 1e-3) continue;
    const ValidatedProblem p = validate_problem(
        {QubitState(s1), QubitState(s2), QubitState(t1), QubitState(t2), 0.5});
    const bool by_grid = alberti_uhlmann(p).feasible;
    const bool by_corollary = pure_target_corollary(p).feasible;
    CHECK(by_grid == by_corollary);
    ++count;
  }
}

TEST_CASE("perfect_value evaluates target purities") {
  CHECK(perfect_value(pure_pair_problem(0.7, 0.5)) == doctest::Approx(1.0).epsilon(1e-14));
  const ValidatedProblem half = validate_problem(
      {QubitState(Vec3(0, 0, 1)), QubitState(Vec3(1, 0, 0)),
       QubitState(Vec3(0, 0, 0.5)), QubitState(Vec3(0.5, 0, 0)), 0.5});
  CHECK(perfect_value(half) == doctest::Approx(0.625).epsilon(1e-14));
}

TEST_CASE("corollary feasibility matches unit fidelity of the solver") {
  SplitMix64 rng(72);
  int count = 0;
  while (count < 300) {
    const double theta = 0.1 + 1.4 * rng.uniform();
    const double theta_bar = 0.1 + 1.4 * rng.uniform();
    if (std::abs(theta - theta_bar) < 1e-3) continue;
    const ValidatedProblem p =
        pure_pair_problem(theta, theta_bar, 0.1 + 0.8 * rng.uniform());
    const double fid = solve(p).fidelity;
    if (pure_target_corollary(p).feasible) {
      CHECK(fid >= 1.0 - 1e-10);
    } else {
      CHECK(fid < 1.0 - 1e-10);
    }
    ++count;
  }
}

TEST_CASE("mixed-target departure from perfect tracking") {
  // sources pure, targets their dephased images: perfectly trackable, yet the
  // optimizer beats the perfect tracker's figure-of-merit value
  const double a = M_PI / 4;
  const double p_noise = 0.3;
  const QubitState s1(Vec3(std::cos(a), 0, std::sin(a)));
  const QubitState s2(Vec3(std::cos(a), 0, -std::sin(a)));
  const QuantumChannel noise = dephasing(p_noise);
  const ValidatedProblem prob =
      validate_problem({s1, s2, apply(noise, s1), apply(noise, s2), 0.5});

  CHECK(alberti_uhlmann(prob).feasible);
  const TrackingSolution sol = solve(prob);
  const double perfect = perfect_value(prob);
  CHECK(sol.fidelity > perfect + 1e-3);
  CHECK((sol.out1 - prob.target1().bloch()).norm() > 1e-3);
  CHECK((sol.out2 - prob.target2().bloch()).norm() > 1e-3);
}
