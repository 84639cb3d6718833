#include "qtrack/json_io.hpp"

#include <fstream>

namespace qtrack {

namespace {

const json& require(const json& j, const char* key, const std::string& context) {
  if (!j.is_object()) {
    throw Error(Errc::invalid_input, context + ": expected an object");
  }
  auto it = j.find(key);
  if (it == j.end()) {
    throw Error(Errc::invalid_input, context + "." + key + ": missing");
  }
  return *it;
}

double number(const json& j, const std::string& context) {
  if (!j.is_number()) {
    throw Error(Errc::invalid_input, context + ": expected a number");
  }
  return j.get<double>();
}

json vec3_to_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json mat3_to_json(const Mat3& m) {
  json out = json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.push_back(m(i, j));
  return out;
}

json complex_to_json(const cplx& z) { return json::array({z.real(), z.imag()}); }

json mat2c_to_json(const Mat2c& m) {
  json out = json::array();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.push_back(complex_to_json(m(i, j)));
  return out;
}

json mat4c_to_json(const Mat4c& m) {
  json out = json::array();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.push_back(complex_to_json(m(i, j)));
  return out;
}

}  // namespace

json state_to_json(const QubitState& s) {
  return json{{"bloch", vec3_to_json(s.bloch())}};
}

QubitState state_from_json(const json& j, const std::string& context) {
  if (!j.is_object()) {
    throw Error(Errc::invalid_input, context + ": expected an object");
  }
  if (j.contains("bloch")) {
    const json& b = j["bloch"];
    if (!b.is_array() || b.size() != 3) {
      throw Error(Errc::invalid_input, context + ".bloch: expected an array of 3 numbers");
    }
    return QubitState(Vec3(number(b[0], context + ".bloch[0]"),
                           number(b[1], context + ".bloch[1]"),
                           number(b[2], context + ".bloch[2]")));
  }
  if (j.contains("density")) {
    const json& d = j["density"];
    if (!d.is_array() || d.size() != 4) {
      throw Error(Errc::invalid_input,
                  context + ".density: expected 4 [re,im] pairs, row-major");
    }
    Mat2c rho;
    for (int k = 0; k < 4; ++k) {
      const json& e = d[static_cast<std::size_t>(k)];
      const std::string ectx = context + ".density[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() != 2) {
        throw Error(Errc::invalid_input, ectx + ": expected [re,im]");
      }
      rho(k / 2, k % 2) = cplx(number(e[0], ectx + "[0]"), number(e[1], ectx + "[1]"));
    }
    return QubitState::from_density(rho);
  }
  throw Error(Errc::invalid_input, context + ": expected \"bloch\" or \"density\"");
}

json problem_to_json(const TrackingProblem& p) {
  return json{{"rho1", state_to_json(p.rho1)},
              {"rho2", state_to_json(p.rho2)},
              {"target1", state_to_json(p.target1)},
              {"target2", state_to_json(p.target2)},
              {"pi1", p.pi1}};
}

TrackingProblem problem_from_json(const json& j) {
  return TrackingProblem{state_from_json(require(j, "rho1", "problem"), "problem.rho1"),
                         state_from_json(require(j, "rho2", "problem"), "problem.rho2"),
                         state_from_json(require(j, "target1", "problem"), "problem.target1"),
                         state_from_json(require(j, "target2", "problem"), "problem.target2"),
                         number(require(j, "pi1", "problem"), "problem.pi1")};
}

json affine_to_json(const AffineParams& a) {
  return json{{"mu1", a.mu1}, {"mu2", a.mu2}, {"mu3", a.mu3}, {"s1", a.s1}};
}

json solution_to_json(const TrackingSolution& sol) {
  json out{{"procedure", procedure_name(sol.procedure)},
           {"V", mat3_to_json(sol.V)},
           {"U", mat3_to_json(sol.U)},
           {"fidelity", sol.fidelity},
           {"alpha", sol.alpha},
           {"output1", vec3_to_json(sol.out1)},
           {"output2", vec3_to_json(sol.out2)}};
  if (sol.affine) out["affine"] = affine_to_json(*sol.affine);
  if (sol.beta1) out["beta1"] = *sol.beta1;
  if (sol.beta2) out["beta2"] = *sol.beta2;
  if (sol.vartheta) out["vartheta"] = *sol.vartheta;
  return out;
}

json channel_to_json(const QuantumChannel& ch) {
  json kraus = json::array();
  for (const auto& k : ch.kraus) kraus.push_back(mat2c_to_json(k));
  json out{{"choi", mat4c_to_json(ch.choi)},
           {"kraus", kraus},
           {"affine", json{{"M", mat3_to_json(ch.affine_m)}, {"c", vec3_to_json(ch.affine_c)}}}};
  if (ch.y_corrected_kraus) out["y_corrected_kraus"] = *ch.y_corrected_kraus;
  return out;
}

json cptp_report_to_json(const CptpReport& r) {
  return json{{"min_choi_eigenvalue", r.min_choi_eigenvalue},
              {"trace_preservation_residual", r.trace_preservation_residual},
              {"kraus_completeness_residual", r.kraus_completeness_residual},
              {"cross_representation_residual", r.cross_representation_residual},
              {"choi_psd", r.choi_psd},
              {"trace_preserving", r.trace_preserving},
              {"kraus_complete", r.kraus_complete},
              {"representations_agree", r.representations_agree},
              {"pass", r.pass}};
}

json certificate_to_json(const DualCertificate& cert) {
  return json{{"x0", cert.coeffs.x0},
              {"x1", cert.coeffs.x1},
              {"x2", cert.coeffs.x2},
              {"x3", cert.coeffs.x3},
              {"eigenvalues",
               json::array({cert.eigenvalues(0), cert.eigenvalues(1), cert.eigenvalues(2),
                            cert.eigenvalues(3)})},
              {"min_eigenvalue", cert.min_eigenvalue},
              {"slackness_residual", cert.slackness_residual},
              {"duality_residual", cert.duality_residual},
              {"psd_ok", cert.min_eigenvalue >= -tol::certificate},
              {"slackness_ok", cert.slackness_residual <= tol::certificate},
              {"duality_ok", cert.duality_residual <= tol::certificate},
              {"valid", cert.valid()}};
}

json geometry_to_json(const GeometrySummary& g) {
  return json{{"r_plus", vec3_to_json(g.r_plus)},
              {"r_minus", vec3_to_json(g.r_minus)},
              {"r_cross", vec3_to_json(g.r_cross)},
              {"rbar_plus", vec3_to_json(g.rbar_plus)},
              {"rbar_minus", vec3_to_json(g.rbar_minus)},
              {"rbar_cross", vec3_to_json(g.rbar_cross)},
              {"r_plus_norm", g.r_plus_norm},
              {"r_minus_norm", g.r_minus_norm},
              {"r_cross_norm", g.r_cross_norm},
              {"rbar_plus_norm", g.rbar_plus_norm},
              {"rbar_minus_norm", g.rbar_minus_norm},
              {"rbar_cross_norm", g.rbar_cross_norm},
              {"T", g.T},
              {"S", g.S},
              {"omega", g.omega},
              {"Xi", g.Xi},
              {"xi", g.xi},
              {"gamma_a", g.gamma_a},
              {"gamma_b", g.gamma_b}};
}

json feasibility_to_json(const FeasibilityReport& r) {
  json out{{"feasible", r.feasible},
           {"margin", r.margin},
           {"method", r.method == FeasibilityMethod::corollary ? "corollary" : "grid"}};
  if (r.witness_t) out["witness_t"] = *r.witness_t;
  return out;
}

json oracle_result_to_json(const OracleResult& r) {
  return json{{"best_value", r.best_value},
              {"closed_form", r.closed_form},
              {"gap", r.gap},
              {"best_sampled", r.best_sampled},
              {"best_climbed", r.best_climbed},
              {"best_channel", channel_to_json(r.best_channel)}};
}

TrackingProblem load_problem(const std::string& path_or_inline) {
  json j;
  const bool looks_inline = !path_or_inline.empty() && path_or_inline.front() == '{';
  if (looks_inline) {
    j = json::parse(path_or_inline, nullptr, false);
    if (j.is_discarded()) {
      throw Error(Errc::invalid_input, "problem: malformed JSON text");
    }
  } else {
    std::ifstream in(path_or_inline);
    if (!in) {
      throw Error(Errc::invalid_input, "problem: cannot open '" + path_or_inline + "'");
    }
    j = json::parse(in, nullptr, false);
    if (j.is_discarded()) {
      throw Error(Errc::invalid_input,
                  "problem: malformed JSON in '" + path_or_inline + "'");
    }
  }
  return problem_from_json(j);
}

}  // namespace qtrack
