#pragma once

// Text formats: 17-significant-digit JSON and CSV output, and the
// comma-separated input forms used on the command line.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "accinfo/binary_dist.hpp"
#include "accinfo/qubit.hpp"
#include "accinfo/solver.hpp"

namespace accinfo::io {

using Json = nlohmann::ordered_json;

/// printf("%.17g").
std::string format_real(double v);

/// Serializes `j` like Json::dump but with every floating-point number
/// written to 17 significant digits.
std::string dump(const Json& j, int indent = 2);

/// Comma- and/or whitespace-separated reals. Throws DomainError on junk.
std::vector<double> parse_reals(std::string_view text);
/// Four reals, row-major p00,p01,p10,p11.
JointDist parse_joint(std::string_view text);
/// Three reals (Bloch vector) or eight reals (row-major [re, im] pairs).
QubitState parse_state(std::string_view text);
/// "p0" or "p0,p1".
std::pair<double, double> parse_prior(std::string_view text);

Json to_json(const JointDist& p);
Json to_json(const ParamCoords& c);
Json to_json(const SolverConfig& cfg);
Json to_json(const SolveReport& r);
Json to_json(const ConcavityReport& r);
Json to_json(const MonotonicityResult& r);
/// Bloch 3-vector.
Json to_json(const QubitState& s);
/// Row-major 2x2 complex matrix as [[re, im] x 4].
Json matrix_json(const Matrix2& m);

inline constexpr std::string_view kLorenzHeader = "lambda,q_rho,q_sigma";
inline constexpr std::string_view kScanHeader =
    "seed,index,lambda_opt,acc_info,oracle_gap,quasi,pseudo";

/// Row-major joint as "p00,p01,p10,p11".
std::string joint_csv(const JointDist& p);
std::string lorenz_csv_row(const LorenzPoint& pt);
std::string scan_csv_row(const ScanRow& row);

}  // namespace accinfo::io
