// qtrack: closed-form optimal tracking for pairs of qubit states.
//
// Subcommands cover solving and certifying problems from JSON, the
// application presets, feasibility checks and the numerical oracle. JSON goes
// to stdout (or --output); sweeps are emitted as CSV.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qtrack/json_io.hpp"
#include "qtrack/sweeps.hpp"

namespace {

using namespace qtrack;

int exit_code_for(const Error& e) {
  return e.code() == Errc::internal_inconsistency ? 2 : 1;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output_path);
  if (!out) {
    throw Error(Errc::invalid_input, "output: cannot open '" + output_path + "'");
  }
  out << text;
}

void emit_json(const json& j, const std::string& output_path) {
  emit(j.dump(2) + "\n", output_path);
}

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

struct CommonOpts {
  std::string output;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal tracking for pairs of qubit states"};
  app.require_subcommand(1);
  CommonOpts common;
  app.add_option("-o,--output", common.output, "Write the result to a file instead of stdout");

  // ---- solve ----
  auto* solve_cmd = app.add_subcommand("solve", "Solve a tracking problem from JSON");
  std::string solve_input;
  bool solve_certify = false, solve_channel = false;
  solve_cmd->add_option("problem", solve_input, "Problem JSON (file path or inline)")->required();
  solve_cmd->add_flag("--certify", solve_certify, "Attach the dual optimality certificate");
  solve_cmd->add_flag("--channel", solve_channel, "Attach the Choi/Kraus/affine channel");

  // ---- certify ----
  auto* certify_cmd = app.add_subcommand("certify", "Build and check the dual certificate");
  std::string certify_input;
  certify_cmd->add_option("problem", certify_input, "Problem JSON (file path or inline)")->required();

  // ---- explain ----
  auto* explain_cmd = app.add_subcommand("explain", "Dump the geometry summary of a problem");
  std::string explain_input;
  explain_cmd->add_option("problem", explain_input, "Problem JSON (file path or inline)")->required();

  // ---- discriminate ----
  auto* disc_cmd = app.add_subcommand("discriminate", "Minimum-error state discrimination");
  double disc_p1 = 0.5;
  std::string disc_s1, disc_s2;
  disc_cmd->add_option("--p1", disc_p1, "Prior of the first state")->required();
  disc_cmd->add_option("--state1", disc_s1, "First state JSON")->required();
  disc_cmd->add_option("--state2", disc_s2, "Second state JSON")->required();

  // ---- purify ----
  auto* purify_cmd = app.add_subcommand("purify", "Optimal purification of a mixed pair");
  double pur_R = 0.8, pur_theta = 0.0, pur_theta_bar = -1.0, pur_pi1 = 0.5;
  bool pur_sweep = false;
  int pur_points = 100;
  purify_cmd->add_option("--R", pur_R, "Source Bloch length")->required();
  purify_cmd->add_option("--theta", pur_theta, "Source half-angle (radians)");
  purify_cmd->add_option("--theta-bar", pur_theta_bar, "Target half-angle (defaults to theta)");
  purify_cmd->add_option("--pi1", pur_pi1, "Prior of the first source");
  purify_cmd->add_flag("--sweep", pur_sweep, "Emit a CSV sweep over theta = theta_bar");
  purify_cmd->add_option("--points", pur_points, "Sweep resolution");

  // ---- stabilize ----
  auto* stab_cmd = app.add_subcommand("stabilize", "Optimal correction of dephasing noise");
  double stab_theta_bar = 0.0, stab_p = 0.0;
  bool stab_sweep = false;
  int stab_points = 100;
  stab_cmd->add_option("--theta-bar", stab_theta_bar, "Half-angle of the protected pair")->required();
  stab_cmd->add_option("--p", stab_p, "Dephasing strength in (0, 1/2]")->required();
  stab_cmd->add_flag("--sweep", stab_sweep, "Emit a CSV sweep over theta_bar");
  stab_cmd->add_option("--points", stab_points, "Sweep resolution");

  // ---- clone ----
  auto* clone_cmd = app.add_subcommand("clone", "State-dependent cloning fidelity");
  double clone_phi = 0.0, clone_p1 = 0.5;
  clone_cmd->add_option("--phi", clone_phi, "Preparation angle in [0, pi/4)")->required();
  clone_cmd->add_option("--p1", clone_p1, "Prior of the first preparation");

  // ---- indicator-sweep ----
  auto* ind_cmd = app.add_subcommand("indicator-sweep", "Indicator sign over the angle grid");
  double ind_R = 1.0;
  int ind_points = 100;
  ind_cmd->add_option("--R", ind_R, "Source Bloch length")->required();
  ind_cmd->add_option("--points", ind_points, "Grid resolution per axis");

  // ---- feasible ----
  auto* feas_cmd = app.add_subcommand("feasible", "Alberti-Uhlmann perfect-tracking check");
  std::string feas_input, feas_curve;
  feas_cmd->add_option("problem", feas_input, "Problem JSON (file path or inline)")->required();
  feas_cmd->add_option("--curve-csv", feas_curve, "Also write the (t, lhs, rhs) margin curve");

  // ---- oracle-check ----
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Random-channel lower bound on the optimum");
  std::string oracle_input;
  OracleConfig oracle_cfg;
  oracle_cmd->add_option("problem", oracle_input, "Problem JSON (file path or inline)")->required();
  oracle_cmd->add_option("--samples", oracle_cfg.n_samples, "Number of random channels");
  oracle_cmd->add_option("--seed", oracle_cfg.seed, "RNG seed");
  oracle_cmd->add_option("--climb-iters", oracle_cfg.n_climb_iters, "Coordinate sweeps per restart");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 1;
  }

  try {
    if (*solve_cmd) {
      const ValidatedProblem p = validate_problem(load_problem(solve_input));
      const TrackingSolution sol = solve(p);
      json out = solution_to_json(sol);
      int exit_code = 0;
      if (solve_certify) {
        const GeometrySummary g = summarize(p);
        const DualCertificate cert = build_f(p, sol, dual_coefficients(g, sol));
        out["certificate"] = certificate_to_json(cert);
        if (!cert.valid()) exit_code = 2;
      }
      if (solve_channel) {
        out["channel"] = channel_to_json(choi_of_solution(sol));
      }
      emit_json(out, common.output);
      return exit_code;
    }

    if (*certify_cmd) {
      const ValidatedProblem p = validate_problem(load_problem(certify_input));
      const DualCertificate cert = certify(p);
      emit_json(certificate_to_json(cert), common.output);
      return cert.valid() ? 0 : 2;
    }

    if (*explain_cmd) {
      const ValidatedProblem p = validate_problem(load_problem(explain_input));
      emit_json(geometry_to_json(summarize(p)), common.output);
      return 0;
    }

    if (*disc_cmd) {
      const auto parse_state = [](const std::string& text, const std::string& ctx) {
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) {
          throw Error(Errc::invalid_input, ctx + ": malformed JSON text");
        }
        return state_from_json(j, ctx);
      };
      const DiscriminationResult r = discriminate(parse_state(disc_s1, "state1"),
                                                  parse_state(disc_s2, "state2"), disc_p1);
      emit_json(json{{"P_track", r.p_track},
                     {"P_helstrom", r.p_helstrom},
                     {"T", r.t_indicator},
                     {"branch", procedure_name(r.branch)}},
                common.output);
      return 0;
    }

    if (*purify_cmd) {
      if (pur_sweep) {
        std::ostringstream csv;
        csv << "theta,fidelity,mu1,mu2,mu3,s1\n";
        for (const PurificationPoint& pt : purification_sweep(pur_R, pur_points, pur_pi1)) {
          csv << csv_number(pt.theta) << ',' << csv_number(pt.fidelity) << ','
              << csv_number(pt.mu1) << ',' << csv_number(pt.mu2) << ','
              << csv_number(pt.mu3) << ',' << csv_number(pt.s1) << '\n';
        }
        emit(csv.str(), common.output);
        return 0;
      }
      if (!(pur_theta > 0.0)) {
        throw Error(Errc::invalid_input, "purify: --theta is required without --sweep");
      }
      const double tb = pur_theta_bar >= 0.0 ? pur_theta_bar : pur_theta;
      const PurificationResult r = purify({pur_R, pur_theta, tb, pur_pi1});
      json out{{"omega", r.omega}, {"fidelity", r.fidelity}};
      if (r.affine) out["affine"] = affine_to_json(*r.affine);
      emit_json(out, common.output);
      return 0;
    }

    if (*stab_cmd) {
      if (stab_sweep) {
        std::ostringstream csv;
        csv << "theta_bar,omega,fidelity\n";
        for (const StabilizationPoint& pt : stabilization_sweep(stab_p, stab_points)) {
          csv << csv_number(pt.theta_bar) << ',' << csv_number(pt.omega) << ','
              << csv_number(pt.fidelity) << '\n';
        }
        emit(csv.str(), common.output);
        return 0;
      }
      const StabilizationResult r = stabilize(stab_theta_bar, stab_p);
      emit_json(json{{"omega", r.omega}, {"fidelity", r.fidelity}}, common.output);
      return 0;
    }

    if (*clone_cmd) {
      const CloningResult r = clone({clone_phi, clone_p1});
      emit_json(json{{"omega_tilde", r.omega_tilde}, {"fidelity", r.fidelity}}, common.output);
      return 0;
    }

    if (*ind_cmd) {
      std::ostringstream csv;
      csv << "source_fidelity,target_fidelity,omega\n";
      for (const IndicatorPoint& pt : indicator_sweep(ind_R, ind_points)) {
        csv << csv_number(pt.source_fidelity) << ',' << csv_number(pt.target_fidelity)
            << ',' << csv_number(pt.omega) << '\n';
      }
      emit(csv.str(), common.output);
      return 0;
    }

    if (*feas_cmd) {
      const ValidatedProblem p = validate_problem(load_problem(feas_input));
      const FeasibilityReport r = alberti_uhlmann(p);
      if (!feas_curve.empty()) {
        std::ostringstream csv;
        csv << "t,lhs,rhs\n";
        for (const MarginSample& s : alberti_uhlmann_curve(p)) {
          csv << csv_number(s.t) << ',' << csv_number(s.lhs) << ',' << csv_number(s.rhs)
              << '\n';
        }
        emit(csv.str(), feas_curve);
      }
      emit_json(feasibility_to_json(r), common.output);
      return 0;
    }

    if (*oracle_cmd) {
      const ValidatedProblem p = validate_problem(load_problem(oracle_input));
      const OracleResult r = oracle_max(p, oracle_cfg);
      emit_json(oracle_result_to_json(r), common.output);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
