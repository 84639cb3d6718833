#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "qtrack/certificate.hpp"
#include "qtrack/json_io.hpp"
#include "test_util.hpp"

using namespace qtrack;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(QTRACK_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

const char* kIdentityProblem =
    R"({"rho1":{"bloch":[0,0,1]},"rho2":{"bloch":[0,0,-1]},)"
    R"("target1":{"bloch":[0,0,1]},"target2":{"bloch":[0,0,-1]},"pi1":0.5})";

}  // namespace

TEST_CASE("problem JSON round trip is value-exact") {
  for (int i = 0; i < 50; ++i) {
    const TrackingProblem p = testutil::random_problem(101, i);
    const TrackingProblem back = problem_from_json(problem_to_json(p));
    CHECK((back.rho1.bloch() - p.rho1.bloch()).norm() == 0.0);
    CHECK((back.target2.bloch() - p.target2.bloch()).norm() == 0.0);
    CHECK(back.pi1 == p.pi1);
  }
}

TEST_CASE("density-matrix state encoding is accepted") {
  const json j = {{"density", {{0.5, 0.0}, {0.0, -0.5}, {0.0, 0.5}, {0.5, 0.0}}}};
  const QubitState s = state_from_json(j, "state");
  CHECK((s.bloch() - Vec3(0, 1, 0)).norm() < 1e-12);
}

TEST_CASE("parse errors name the offending field") {
  json j = json::parse(kIdentityProblem);
  j.erase("rho2");
  CHECK_THROWS_WITH_AS(problem_from_json(j), doctest::Contains("problem.rho2"), Error);

  json bad_state = json::parse(kIdentityProblem);
  bad_state["target1"] = {{"bloch", {0.0, 1.0}}};
  CHECK_THROWS_WITH_AS(problem_from_json(bad_state), doctest::Contains("target1.bloch"),
                       Error);

  json bad_prior = json::parse(kIdentityProblem);
  bad_prior["pi1"] = "half";
  CHECK_THROWS_WITH_AS(problem_from_json(bad_prior), doctest::Contains("pi1"), Error);
}

TEST_CASE("serialized documents are byte-stable") {
  const ValidatedProblem p = testutil::random_validated(102, 7);
  const TrackingSolution sol = solve(p);
  CHECK(solution_to_json(sol).dump(2) == solution_to_json(solve(p)).dump(2));
  const DualCertificate cert = certify(p);
  CHECK(certificate_to_json(cert).dump(2) == certificate_to_json(certify(p)).dump(2));
}

TEST_CASE("solution and certificate JSON carry the expected fields") {
  const ValidatedProblem p = testutil::random_validated(103, 2);
  const TrackingSolution sol = solve(p);
  const json js = solution_to_json(sol);
  CHECK(js.contains("procedure"));
  CHECK(js["V"].size() == 9);
  CHECK(js["U"].size() == 9);
  CHECK(js.contains("fidelity"));

  const json jc = certificate_to_json(certify(p));
  CHECK(jc["x2"] == 0.0);
  CHECK(jc["valid"] == true);
  CHECK(jc["eigenvalues"].size() == 4);

  const json jch = channel_to_json(choi_of_solution(sol));
  CHECK(jch["choi"].size() == 16);
  CHECK(jch["affine"]["M"].size() == 9);
}

TEST_CASE("cli: solve the identity problem") {
  const CliResult r = run_cli(std::string("solve '") + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["fidelity"] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["procedure"] == "B");
}

TEST_CASE("cli: solve with certificate and channel attached") {
  const CliResult r =
      run_cli(std::string("solve --certify --channel '") + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["certificate"]["valid"] == true);
  CHECK(j["channel"]["kraus"].size() == 1);
}

TEST_CASE("cli: certify exits 0 on a valid problem") {
  const CliResult r = run_cli(std::string("certify '") + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["valid"] == true);
}

TEST_CASE("cli: stabilize benchmark point") {
  const CliResult r = run_cli("stabilize --theta-bar 0.7853981634 --p 0.25");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["fidelity"] == doctest::Approx(0.943203).epsilon(1e-5));
}

TEST_CASE("cli: clone and discriminate points") {
  const CliResult c = run_cli("clone --phi 0.39269908169872414");  // pi/8
  CHECK(c.exit_code == 0);
  CHECK(json::parse(c.out)["fidelity"] ==
        doctest::Approx(0.5 + 0.5 * std::cos(M_PI / 12)).epsilon(1e-9));

  const CliResult d = run_cli(
      R"(discriminate --p1 0.7 --state1 '{"bloch":[0,0,1]}' --state2 '{"bloch":[1,0,0]}')");
  CHECK(d.exit_code == 0);
  const json jd = json::parse(d.out);
  CHECK(jd["P_track"] == doctest::Approx(0.5 + 0.5 * std::sqrt(0.58)).epsilon(1e-9));
  CHECK(jd["T"] == doctest::Approx(-0.42).epsilon(1e-9));
}

TEST_CASE("cli: purify sweep emits the documented CSV header") {
  const CliResult r = run_cli("purify --R 0.6 --sweep --points 10");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("theta,fidelity,mu1,mu2,mu3,s1\n", 0) == 0);
  int rows = -1;  // discount the header
  for (char ch : r.out) rows += ch == '\n';
  CHECK(rows == 10);
}

TEST_CASE("cli: indicator sweep emits the figure axes") {
  const CliResult r = run_cli("indicator-sweep --R 0.9 --points 12");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("source_fidelity,target_fidelity,omega\n", 0) == 0);
}

TEST_CASE("cli: feasible report") {
  const CliResult r = run_cli(std::string("feasible '") + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  CHECK(json::parse(r.out)["feasible"] == true);
}

TEST_CASE("cli: explain dumps the geometry summary") {
  const CliResult r = run_cli(std::string("explain '") + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["T"] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(j["S"] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cli: oracle-check smoke run") {
  const CliResult r = run_cli(std::string("oracle-check --samples 200 --seed 5 '") +
                              kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  CHECK(j["gap"].get<double>() >= -1e-9);
}

TEST_CASE("cli: byte-stable output for fixed inputs") {
  const std::string args = std::string("solve --certify '") + kIdentityProblem + "'";
  CHECK(run_cli(args).out == run_cli(args).out);
  const std::string sweep = "purify --R 0.8 --sweep --points 25";
  CHECK(run_cli(sweep).out == run_cli(sweep).out);
}

TEST_CASE("cli: exit code 1 on malformed or unphysical input") {
  CHECK(run_cli("solve '{\"rho1\":}'").exit_code == 1);
  CHECK(run_cli("solve /no/such/file.json").exit_code == 1);
  // identical sources
  CHECK(run_cli(R"(solve '{"rho1":{"bloch":[0,0,1]},"rho2":{"bloch":[0,0,1]},)"
                R"("target1":{"bloch":[0,0,1]},"target2":{"bloch":[0,0,-1]},"pi1":0.5}')")
            .exit_code == 1);
  // unphysical Bloch vector
  CHECK(run_cli(R"(solve '{"rho1":{"bloch":[0,0,2]},"rho2":{"bloch":[0,0,1]},)"
                R"("target1":{"bloch":[0,0,1]},"target2":{"bloch":[0,0,-1]},"pi1":0.5}')")
            .exit_code == 1);
  CHECK(run_cli("purify --R 0.5 --theta 0.3 --no-such-flag").exit_code == 1);
  CHECK(run_cli("stabilize --theta-bar 0.5 --p 0.9").exit_code == 1);
}

TEST_CASE("cli: output file option") {
  const std::string path = "/tmp/qtrack_test_out.json";
  std::remove(path.c_str());
  const CliResult r =
      run_cli(std::string("-o ") + path + " solve '" + kIdentityProblem + "'");
  CHECK(r.exit_code == 0);
  std::ifstream in(path);
  REQUIRE(in.good());
  json j;
  in >> j;
  CHECK(j["fidelity"] == doctest::Approx(1.0));
  std::remove(path.c_str());
}
