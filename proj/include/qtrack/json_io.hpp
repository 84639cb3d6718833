#pragma once

#include <json.hpp>

#include "qtrack/applications.hpp"
#include "qtrack/certificate.hpp"
#include "qtrack/feasibility.hpp"
#include "qtrack/geometry.hpp"
#include "qtrack/oracle.hpp"

namespace qtrack {

using json = nlohmann::json;

// States encode as {"bloch":[x,y,z]}; {"density":[[re,im] x 4 row-major]} is
// accepted on input. Parse failures throw Errc::invalid_input naming the
// offending field.
json state_to_json(const QubitState& s);
QubitState state_from_json(const json& j, const std::string& context);

json problem_to_json(const TrackingProblem& p);
TrackingProblem problem_from_json(const json& j);

json affine_to_json(const AffineParams& a);
json solution_to_json(const TrackingSolution& sol);
json channel_to_json(const QuantumChannel& ch);
json cptp_report_to_json(const CptpReport& r);
json certificate_to_json(const DualCertificate& cert);
json geometry_to_json(const GeometrySummary& g);
json feasibility_to_json(const FeasibilityReport& r);
json oracle_result_to_json(const OracleResult& r);

// Parses a problem from inline JSON text or, failing that, a file path.
TrackingProblem load_problem(const std::string& path_or_inline);

}  // namespace qtrack
