#pragma once

// Accessible information of a qubit dichotomy.
//
// The bisection solver searches the extremality window [-l*, l*] of the
// Helstrom family for a zero of dI/dl. It returns the accessible information
// whenever I(l) is pseudo-concave on the window (Keil's conjecture in its
// pseudo-concave form). The brute-force oracle does not rely on that
// assumption and is used to check it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "accinfo/qubit.hpp"

namespace accinfo {

/// Raised when the bisection hits max_iter before the interval closes.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolverConfig {
    double tol_lambda = 1e-10;  ///< stop once lambda_max - lambda_min < tol_lambda
    double fd_step = 1e-6;      ///< central-difference step for dI/dl
    int max_iter = 200;

    /// Throws DomainError on non-positive values.
    void validate() const;
};

struct DerivativeSample {
    double lambda = 0.0;
    double derivative = 0.0;
};

struct SolveReport {
    double lambda_opt = 0.0;
    double acc_info = 0.0;  ///< bits
    int iterations = 0;
    double lambda_star = 0.0;
    /// Bracket width after the last iteration, (2 l*) / 2^iterations.
    double final_width = 0.0;
    std::vector<DerivativeSample> derivative_trace;
    /// Oracle maximum minus acc_info, when an oracle was run.
    std::optional<double> oracle_gap;
};

struct DerivativeEstimate {
    double value = 0.0;
    /// Set when l +- h leaves the window and a one-sided difference was used.
    bool one_sided = false;
};

struct OracleResult {
    double lambda_best = 0.0;
    double info_best = 0.0;
    /// Best planar von Neumann measurement found by the independent angle sweep.
    double theta_best = 0.0;
    double theta_info = 0.0;
};

struct ConcavityReport {
    std::vector<std::pair<double, double>> grid;  ///< (lambda, I) samples
    std::vector<double> stationary_points;
    bool quasi_concave = true;
    bool pseudo_concave = true;
};

/// I(l) = mutual information of the joint induced by the eigenprojectors of H(l).
double info_of_lambda(const Dichotomy& d, double lambda);

/// Central difference (I(l + h) - I(l - h)) / 2h; one-sided when l is within
/// h of a window edge.
DerivativeEstimate info_derivative(const Dichotomy& d, double lambda, const SolverConfig& cfg);

/// Bisection on the sign of dI/dl starting from l' = 0 over [-l*, l*]. A zero
/// derivative moves the lower end. Throws ConvergenceError if max_iter is
/// reached first.
SolveReport bisect_accessible_info(const Dichotomy& d, const SolverConfig& cfg = {});

/// Derivative-free oracle: n_grid samples of I(l) on [-l*, l*] refined by
/// golden-section search, plus an independent sweep over projective
/// measurements whose Bloch axis lies in the plane of the two states.
OracleResult brute_force_accessible_info(const Dichotomy& d, int n_grid);

/// Mutual information of the projective measurement along a Bloch direction,
/// computed with explicit complex matrices (no H(l) code path).
double info_of_axis(const Dichotomy& d, const Vec3& axis);

/// Samples I(l) on n_grid points of [-l*, l*] and tests unimodality
/// (quasi-concavity) and whether every stationary point is a global maximum
/// (pseudo-concavity), both with a noise floor of 1e-9.
ConcavityReport concavity_scan(const Dichotomy& d, int n_grid);

/// Uniform point of the unit ball (cube rejection).
template <class Rng>
Vec3 random_bloch_ball(Rng& rng);

struct ScanConfig {
    std::uint64_t seed = 0;
    int count = 1;
    int oracle_grid = 400;
    int concavity_grid = 400;
    SolverConfig solver;
    unsigned threads = 0;  ///< 0 picks the hardware concurrency
};

struct ScanRow {
    std::uint64_t seed = 0;
    int index = 0;
    double lambda_opt = 0.0;
    double acc_info = 0.0;
    double oracle_gap = 0.0;
    bool quasi = true;
    bool pseudo = true;
};

struct ScanSummary {
    std::vector<ScanRow> rows;
    int quasi_violations = 0;
    int pseudo_violations = 0;
    int gap_violations = 0;  ///< rows with oracle_gap > 1e-6
};

/// The index-th random dichotomy of a scan: Bloch vectors uniform in the
/// ball, p0 uniform in [0, 1]. Depends only on (seed, index).
Dichotomy scan_dichotomy(std::uint64_t seed, int index);

/// Runs solver, oracle and concavity scan on `count` random dichotomies.
/// Rows are ordered by index regardless of thread count.
ScanSummary conjecture_scan(const ScanConfig& cfg);

}  // namespace accinfo

#include "accinfo/detail/random.hpp"
