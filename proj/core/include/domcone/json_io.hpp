#pragma once

// JSON encodings shared by the CLI and the tests.
//
//   matrix    {"n": 3, "entries": [[...], [...], [...]]}, row-major
//   exponent  number >= 2 or the string "inf"
//   operator  {"type": "dominative", "n": 3, "p": 4}
//             {"type": "pucci", "n": 2, "lam": 1, "Lam": 3}
//             {"type": "linear", "A": matrix, "m": 0.5}
//             {"type": "ensemble", "body": body}
//             {"type": "example"}
//             {"type": "shifted", "inner": operator, "X0": matrix}
//             {"type": "conjugated", "inner": operator, "B": matrix}
//   body      {"n": 3, "generators": [matrix, ...], "rot_closed": true}
//
// Shorthands: "dominative:n=3,p=4", "pucci:n=2,lam=1,Lam=3", "example".
// Non-finite doubles in reports are written as the strings "inf", "-inf",
// "nan". Parse failures throw ErrorCode::malformed_input.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "domcone/acdo.hpp"
#include "domcone/aperture.hpp"
#include "domcone/cones.hpp"
#include "domcone/fundsol.hpp"
#include "domcone/operators.hpp"

namespace domcone {

using json = nlohmann::json;

inline constexpr int kReportSchema = 1;

json number_to_json(double v);
double number_from_json(const json& j);

json to_json(const SymMatrix& x);
json to_json(const SquareMatrix& x);
SymMatrix sym_matrix_from_json(const json& j);
SquareMatrix square_matrix_from_json(const json& j);

json to_json(const Exponent& p);
Exponent exponent_from_json(const json& j);
/// "inf", "infinity" or a decimal number.
Exponent parse_exponent(const std::string& s);

json to_json(const ConvexBody& body);
ConvexBody body_from_json(const json& j);

json to_json(const OperatorSpec& op);
OperatorSpec operator_from_json(const json& j);

OperatorSpec parse_operator_shorthand(const std::string& s);
ConvexBody parse_body_shorthand(const std::string& s);

/// Reads and parses a JSON file (ErrorCode::io_failure / malformed_input).
json read_json_file(const std::filesystem::path& path);

json to_json(const Violation& v);
Violation violation_from_json(const json& j);
json to_json(const PropertyReport& r);
PropertyReport property_report_from_json(const json& j);
json to_json(const ApertureResult& r);
ApertureResult aperture_result_from_json(const json& j);
json to_json(const MinimalBoundReport& r);
json to_json(const PermutationDecomposition& d);
json to_json(const AcdoResult& r);
json to_json(const NestingReport& r);
json to_json(const InclusionReport& r);
InclusionReport inclusion_report_from_json(const json& j);
json to_json(const PairingEstimate& e);
json to_json(const AnnihilationReport& r);
json to_json(const SobolevResult& r);
SobolevResult sobolev_result_from_json(const json& j);
json to_json(const SobolevDichotomy& d);
json to_json(const ExampleRadialReport& r);

} // namespace domcone
