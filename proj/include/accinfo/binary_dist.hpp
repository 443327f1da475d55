#pragma once

// Binary joint distributions p_{X,Y} over {0,1} x {0,1}: the (a, b, lambda)
// coordinates, entropies, guessing probability, the Fano / Hellman-Raviv
// bounds, the information-maximizing joint under a guessing-probability cap,
// and the monotonicity test between information and guessing probability.
//
// All logarithms are base 2. 0 log 0 is taken to be 0.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

namespace accinfo {

/// Tolerance used when validating and clamping probability entries.
inline constexpr double kProbabilityTolerance = 1e-12;

/// Raised when a value falls outside the domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a constrained optimization problem has an empty feasible set.
class InfeasibleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Coordinates of a 2x2 joint distribution: X-marginal bias a, Y-marginal bias
/// b and correlation lambda, so that
///   p = 1/4 [[1+a+b+l, 1+a-b-l], [1-a+b-l, 1-a-b+l]].
struct ParamCoords {
    double a = 0.0;
    double b = 0.0;
    double lambda = 0.0;
};

/// Feasible interval for lambda at fixed (a, b): [-1 + |a+b|, 1 - |a-b|].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};
Interval lambda_range(double a, double b);
/// Feasible interval for b at fixed (a, lambda): [-1 + |a+l|, 1 - |a-l|].
Interval b_range(double a, double lambda);

/// Throws DomainError naming the violated bound if `c` is not a valid point.
void validate(const ParamCoords& c);

struct MarginalX {
    double p0 = 0.5;
    double p1 = 0.5;

    static MarginalX from_p0(double p0);
};

/// A validated 2x2 joint probability matrix, indexed (x, y).
class JointDist {
public:
    using Matrix = std::array<std::array<double, 2>, 2>;

    /// Accepts entries >= -1e-12 with |sum - 1| <= 1e-12, clamps negatives to
    /// zero and renormalizes. Anything worse throws DomainError.
    explicit JointDist(const Matrix& p);
    JointDist(double p00, double p01, double p10, double p11);

    double operator()(int x, int y) const { return p_[x][y]; }
    const Matrix& matrix() const { return p_; }

    std::array<double, 2> marginal_x() const;
    std::array<double, 2> marginal_y() const;
    double trace() const { return p_[0][0] + p_[1][1]; }

    /// True when every entry is strictly positive.
    bool interior() const;

    /// Row swap: relabels X. Maps (a, b, l) to (-a, b, -l).
    JointDist swap_rows() const;
    /// Column swap: relabels Y. Maps (a, b, l) to (a, -b, -l).
    JointDist swap_cols() const;

    friend bool operator==(const JointDist&, const JointDist&) = default;

private:
    Matrix p_;
};

JointDist joint_from_coords(const ParamCoords& c);
ParamCoords coords_from_joint(const JointDist& p);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);
double entropy_x(const JointDist& p);
double entropy_y(const JointDist& p);
double joint_entropy(const JointDist& p);
/// H(X|Y) = H(X,Y) - H(Y).
double conditional_entropy(const JointDist& p);
/// I(X:Y) = H(X) - H(X|Y).
double mutual_information(const JointDist& p);

/// Probability of guessing X from Y: (1 + max(|a|, |lambda|)) / 2.
/// Does not depend on b; the tie |a| = |lambda| needs no special handling.
double guessing_probability(const JointDist& p);
double guessing_probability(const ParamCoords& c);

enum class FanoVariant {
    Plain,         ///< h(P) + (1 - P) log2 |X|
    Strengthened,  ///< h(P) + (1 - P) log2 (|X| - 1)
};

/// Upper bound on H(X|Y) given the guessing probability P.
double fano_upper_bound(double guess, int alphabet_size,
                        FanoVariant variant = FanoVariant::Plain);

/// Lower bound 2 (1 - P) on H(X|Y).
double hellman_raviv_lower_bound(double guess);

/// The joint with X-marginal `px` that maximizes I(X:Y) subject to
/// P_{X|Y} <= cap. If px.p0 < px.p1 the rows are relabeled internally and the
/// result is mapped back, so the returned marginal always equals `px`.
/// Throws InfeasibleError if cap < max(px).
JointDist tradeoff_max(const MarginalX& px, double cap);
/// Coordinates (a*, b*, l*) of the maximizer in the frame p0 >= p1.
ParamCoords tradeoff_coords(const MarginalX& px, double cap);

enum class MonotonicityStatus {
    Holds,     ///< no joint with the same X-marginal and P_{X|Z} <= P_{X|Y} has more information
    Violated,  ///< a witness exists, see MonotonicityResult::witness
    Vacuous,   ///< P_{X|Y} == max p_X: observing Y does not help guessing
};

struct MonotonicityResult {
    MonotonicityStatus status = MonotonicityStatus::Vacuous;
    bool trace_condition = false;    ///< Tr p >= p_{X=0} (canonical frame)
    bool guessing_condition = false; ///< P_{X|Y} == p_{Y=0} + 1 - p_{X=0} (canonical frame)
    double info = 0.0;               ///< I(X:Y)
    double guess = 0.0;              ///< P_{X|Y}
    /// Information-maximizing competitor p_{X,Z}; present unless Vacuous.
    std::optional<JointDist> witness;
    double witness_info = 0.0;
    double witness_guess = 0.0;

    /// True for Holds and Vacuous.
    bool holds() const { return status != MonotonicityStatus::Violated; }
};

/// Decides whether every p_{X,Z} with the same X-marginal and
/// P_{X|Z} <= P_{X|Y} satisfies I(X:Z) <= I(X:Y). Inputs need not be
/// pre-sorted; the test runs in the frame a >= 0, lambda >= 0.
MonotonicityResult monotonicity_holds(const JointDist& p);

/// Analytic partial derivatives of I(a, b, lambda), in bits.
struct InfoDerivatives {
    double d_lambda = 0.0;
    double d_b = 0.0;
    double d2_lambda = 0.0;
    double d2_b = 0.0;
};

/// Empty when the point lies on the boundary (some entry is zero), where the
/// derivatives are undefined.
std::optional<InfoDerivatives> info_derivatives(const ParamCoords& c);

std::string to_string(MonotonicityStatus s);

}  // namespace accinfo
