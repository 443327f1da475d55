#include "accinfo/binary_dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace accinfo {

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

Interval lambda_range(double a, double b) {
    return {-1.0 + std::abs(a + b), 1.0 - std::abs(a - b)};
}

Interval b_range(double a, double lambda) {
    return {-1.0 + std::abs(a + lambda), 1.0 - std::abs(a - lambda)};
}

void validate(const ParamCoords& c) {
    const double tol = kProbabilityTolerance;
    if (!std::isfinite(c.a) || !std::isfinite(c.b) || !std::isfinite(c.lambda))
        throw DomainError("coordinates must be finite");
    if (c.a < -1.0 - tol || c.a > 1.0 + tol)
        throw DomainError("a = " + fmt(c.a) + " outside [-1, 1]");
    if (c.b < -1.0 - tol || c.b > 1.0 + tol)
        throw DomainError("b = " + fmt(c.b) + " outside [-1, 1]");
    const auto r = lambda_range(c.a, c.b);
    if (c.lambda < r.lo - tol)
        throw DomainError("lambda = " + fmt(c.lambda) + " below lower bound -1 + |a + b| = " +
                          fmt(r.lo));
    if (c.lambda > r.hi + tol)
        throw DomainError("lambda = " + fmt(c.lambda) + " above upper bound 1 - |a - b| = " +
                          fmt(r.hi));
}

MarginalX MarginalX::from_p0(double p0) {
    if (!(p0 >= -kProbabilityTolerance && p0 <= 1.0 + kProbabilityTolerance))
        throw DomainError("marginal p0 = " + fmt(p0) + " outside [0, 1]");
    p0 = std::clamp(p0, 0.0, 1.0);
    return {p0, 1.0 - p0};
}

JointDist::JointDist(const Matrix& p) : p_(p) {
    double sum = 0.0;
    for (const auto& row : p_) {
        for (double v : row) {
            if (!std::isfinite(v)) throw DomainError("joint entries must be finite");
            if (v < -kProbabilityTolerance)
                throw DomainError("joint entry " + fmt(v) + " is negative");
            sum += v;
        }
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance)
        throw DomainError("joint entries sum to " + fmt(sum) + ", not 1");
    double clamped = 0.0;
    for (auto& row : p_)
        for (double& v : row) {
            v = std::max(v, 0.0);
            clamped += v;
        }
    for (auto& row : p_)
        for (double& v : row) v /= clamped;
}

JointDist::JointDist(double p00, double p01, double p10, double p11)
    : JointDist(Matrix{{{p00, p01}, {p10, p11}}}) {}

std::array<double, 2> JointDist::marginal_x() const {
    return {p_[0][0] + p_[0][1], p_[1][0] + p_[1][1]};
}

std::array<double, 2> JointDist::marginal_y() const {
    return {p_[0][0] + p_[1][0], p_[0][1] + p_[1][1]};
}

bool JointDist::interior() const {
    return std::all_of(p_.begin(), p_.end(), [](const auto& row) {
        return row[0] > 0.0 && row[1] > 0.0;
    });
}

JointDist JointDist::swap_rows() const { return JointDist(Matrix{{p_[1], p_[0]}}); }

JointDist JointDist::swap_cols() const {
    return JointDist(p_[0][1], p_[0][0], p_[1][1], p_[1][0]);
}

JointDist joint_from_coords(const ParamCoords& c) {
    validate(c);
    const double a = c.a, b = c.b, l = c.lambda;
    return JointDist(0.25 * (1 + a + b + l), 0.25 * (1 + a - b - l),
                     0.25 * (1 - a + b - l), 0.25 * (1 - a - b + l));
}

ParamCoords coords_from_joint(const JointDist& p) {
    // c_k = Tr[p M_k^T] with M_a = [[1,1],[-1,-1]], M_b = [[1,-1],[1,-1]],
    // M_l = [[1,-1],[-1,1]].
    return {p(0, 0) + p(0, 1) - p(1, 0) - p(1, 1),
            p(0, 0) - p(0, 1) + p(1, 0) - p(1, 1),
            p(0, 0) - p(0, 1) - p(1, 0) + p(1, 1)};
}

double binary_entropy(double p) { return -plogp(p) - plogp(1.0 - p); }

double entropy_x(const JointDist& p) {
    const auto m = p.marginal_x();
    return -plogp(m[0]) - plogp(m[1]);
}

double entropy_y(const JointDist& p) {
    const auto m = p.marginal_y();
    return -plogp(m[0]) - plogp(m[1]);
}

double joint_entropy(const JointDist& p) {
    return -(plogp(p(0, 0)) + plogp(p(0, 1)) + plogp(p(1, 0)) + plogp(p(1, 1)));
}

double conditional_entropy(const JointDist& p) {
    return std::max(0.0, joint_entropy(p) - entropy_y(p));
}

double mutual_information(const JointDist& p) {
    // KL form of H(X) - H(X|Y); avoids cancellation near independence.
    const auto mx = p.marginal_x();
    const auto my = p.marginal_y();
    double info = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            const double pxy = p(x, y);
            if (pxy > 0.0) info += pxy * std::log2(pxy / (mx[x] * my[y]));
        }
    return std::max(0.0, info);
}

double guessing_probability(const ParamCoords& c) {
    return 0.5 * (1.0 + std::max(std::abs(c.a), std::abs(c.lambda)));
}

double guessing_probability(const JointDist& p) {
    return guessing_probability(coords_from_joint(p));
}

double fano_upper_bound(double guess, int alphabet_size, FanoVariant variant) {
    if (alphabet_size < 2) throw DomainError("alphabet size must be at least 2");
    const double floor = 1.0 / alphabet_size;
    if (!(guess >= floor - kProbabilityTolerance && guess <= 1.0 + kProbabilityTolerance))
        throw DomainError("guessing probability " + fmt(guess) + " outside [1/|X|, 1]");
    guess = std::clamp(guess, floor, 1.0);
    const double symbols =
        variant == FanoVariant::Plain ? alphabet_size : alphabet_size - 1;
    return binary_entropy(guess) + (1.0 - guess) * std::log2(symbols);
}

double hellman_raviv_lower_bound(double guess) {
    if (!(guess >= -kProbabilityTolerance && guess <= 1.0 + kProbabilityTolerance))
        throw DomainError("guessing probability " + fmt(guess) + " outside [0, 1]");
    return 2.0 * (1.0 - std::clamp(guess, 0.0, 1.0));
}

ParamCoords tradeoff_coords(const MarginalX& px, double cap) {
    const double p0 = std::max(px.p0, px.p1);
    if (!std::isfinite(cap) || cap > 1.0 + kProbabilityTolerance)
        throw DomainError("guessing cap " + fmt(cap) + " exceeds 1");
    if (cap < p0 - kProbabilityTolerance)
        throw InfeasibleError("guessing cap " + fmt(cap) +
                              " is below max p_X = " + fmt(p0) +
                              "; P_{X|Y} >= max p_X holds for every joint");
    cap = std::clamp(cap, p0, 1.0);
    const double a = 2.0 * p0 - 1.0;
    const double l = 2.0 * cap - 1.0;
    return {a, l + a - 1.0, l};
}

JointDist tradeoff_max(const MarginalX& px, double cap) {
    if (std::abs(px.p0 + px.p1 - 1.0) > kProbabilityTolerance || px.p0 < 0.0 || px.p1 < 0.0)
        throw DomainError("X-marginal must be a probability vector");
    const ParamCoords c = tradeoff_coords(px, cap);
    const JointDist best = joint_from_coords(c);
    return px.p0 >= px.p1 ? best : best.swap_rows();
}

MonotonicityResult monotonicity_holds(const JointDist& p) {
    constexpr double tol = kProbabilityTolerance;
    MonotonicityResult r;
    r.info = mutual_information(p);
    r.guess = guessing_probability(p);

    // Conditions are read in the frame a >= 0, lambda >= 0. Relabeling
    // leaves I, P and the answer unchanged; when a or lambda is zero two
    // relabelings are in that frame and either may satisfy them.
    double mx0 = 0.0;
    bool first = true;
    for (const JointDist& q : {p, p.swap_rows(), p.swap_cols(), p.swap_rows().swap_cols()}) {
        const ParamCoords c = coords_from_joint(q);
        if (c.a < -tol || c.lambda < -tol) continue;
        const auto mx = q.marginal_x();
        const auto my = q.marginal_y();
        const bool trace_ok = q.trace() >= mx[0] - tol;
        const bool guess_ok = std::abs(r.guess - (my[0] + (1.0 - mx[0]))) <= tol;
        if (first || (trace_ok && guess_ok)) {
            r.trace_condition = trace_ok;
            r.guessing_condition = guess_ok;
            mx0 = mx[0];
            first = false;
        }
        if (trace_ok && guess_ok) break;
    }

    if (r.guess <= mx0 + tol) {
        r.status = MonotonicityStatus::Vacuous;
        return r;
    }

    const auto px = p.marginal_x();
    r.witness = tradeoff_max(MarginalX{px[0], px[1]}, r.guess);
    r.witness_info = mutual_information(*r.witness);
    r.witness_guess = guessing_probability(*r.witness);
    r.status = r.trace_condition && r.guessing_condition ? MonotonicityStatus::Holds
                                                         : MonotonicityStatus::Violated;
    return r;
}

std::optional<InfoDerivatives> info_derivatives(const ParamCoords& c) {
    const JointDist p = joint_from_coords(c);
    if (!p.interior()) return std::nullopt;
    const double p00 = p(0, 0), p01 = p(0, 1), p10 = p(1, 0), p11 = p(1, 1);
    const auto my = p.marginal_y();
    const double inv_ln2 = 1.0 / std::log(2.0);
    const double inv_sum = 1.0 / p00 + 1.0 / p01 + 1.0 / p10 + 1.0 / p11;

    InfoDerivatives d;
    d.d_lambda = 0.25 * std::log2((p00 * p11) / (p01 * p10));
    d.d2_lambda = inv_sum / 16.0 * inv_ln2;
    d.d_b = 0.25 * std::log2((p00 * p10) / (p01 * p11)) + 0.5 * std::log2(my[1] / my[0]);
    d.d2_b = (inv_sum / 16.0 - 1.0 / (1.0 - c.b * c.b)) * inv_ln2;
    return d;
}

std::string to_string(MonotonicityStatus s) {
    switch (s) {
        case MonotonicityStatus::Holds: return "holds";
        case MonotonicityStatus::Violated: return "violated";
        case MonotonicityStatus::Vacuous: return "vacuous";
    }
    return "unknown";
}

}  // namespace accinfo
