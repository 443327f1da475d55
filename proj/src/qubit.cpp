#include "accinfo/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace accinfo {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Vec3 scaled(double k, const Vec3& v) { return {k * v[0], k * v[1], k * v[2]}; }

}  // namespace

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 cross(const Vec3& u, const Vec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

std::pair<double, double> HermitianOp::eigenvalues() const {
    const double r = norm(vec);
    return {scalar + r, scalar - r};
}

Matrix2 HermitianOp::matrix() const {
    using C = std::complex<double>;
    return {C(scalar + vec[2], 0.0), C(vec[0], -vec[1]), C(vec[0], vec[1]),
            C(scalar - vec[2], 0.0)};
}

HermitianOp HermitianOp::from_matrix(const Matrix2& m) {
    return {0.5 * (m[0].real() + m[3].real()),
            {0.5 * (m[1].real() + m[2].real()), 0.5 * (m[2].imag() - m[1].imag()),
             0.5 * (m[0].real() - m[3].real())}};
}

HermitianOp operator+(const HermitianOp& a, const HermitianOp& b) {
    return {a.scalar + b.scalar,
            {a.vec[0] + b.vec[0], a.vec[1] + b.vec[1], a.vec[2] + b.vec[2]}};
}

HermitianOp operator-(const HermitianOp& a, const HermitianOp& b) {
    return {a.scalar - b.scalar,
            {a.vec[0] - b.vec[0], a.vec[1] - b.vec[1], a.vec[2] - b.vec[2]}};
}

HermitianOp operator*(double k, const HermitianOp& a) { return {k * a.scalar, scaled(k, a.vec)}; }

double trace_product(const HermitianOp& a, const HermitianOp& b) {
    return 2.0 * (a.scalar * b.scalar + dot(a.vec, b.vec));
}

QubitState QubitState::from_bloch(const Vec3& r) {
    for (double c : r)
        if (!std::isfinite(c)) throw DomainError("Bloch vector must be finite");
    const double len = norm(r);
    if (len > 1.0 + 2.0 * kDichotomyTolerance)
        throw DomainError("Bloch vector length " + fmt(len) + " exceeds 1");
    return QubitState(len > 1.0 ? scaled(1.0 / len, r) : r);
}

QubitState QubitState::from_matrix(const Matrix2& m) {
    for (const auto& z : m)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw DomainError("density matrix entries must be finite");
    const double skew = std::max({std::abs(m[0].imag()), std::abs(m[3].imag()),
                                  std::abs(m[1] - std::conj(m[2]))});
    if (skew > kHermitianTolerance)
        throw DomainError("density matrix is not Hermitian (deviation " + fmt(skew) + ")");
    const HermitianOp h = HermitianOp::from_matrix(m);
    if (std::abs(h.trace() - 1.0) > kHermitianTolerance)
        throw DomainError("density matrix trace " + fmt(h.trace()) + " is not 1");
    // Normalize the trace exactly; the Bloch vector is 2 v / Tr.
    const Vec3 r = scaled(2.0 / h.trace(), h.vec);
    if (norm(r) > 1.0 + 2.0 * kDichotomyTolerance)
        throw DomainError("density matrix has a negative eigenvalue " +
                          fmt(0.5 * (1.0 - norm(r))));
    return from_bloch(r);
}

Dichotomy::Dichotomy(const QubitState& rho, const QubitState& sigma, double p0, double p1)
    : rho_(rho), sigma_(sigma), p0_(p0), p1_(p1) {
    if (!(p0 >= 0.0 && p1 >= 0.0) || std::abs(p0 + p1 - 1.0) > kProbabilityTolerance)
        throw DomainError("prior (" + fmt(p0) + ", " + fmt(p1) + ") is not a probability vector");
    if (distance_sq() <= kDichotomyTolerance)
        throw DomainError("dichotomy states coincide: Tr(rho - sigma)^2 = " + fmt(distance_sq()));
}

double Dichotomy::distance_sq() const { return (rho_.op() - sigma_.op()).trace_sq(); }

double Dichotomy::overlap() const { return trace_product(rho_.op(), sigma_.op()); }

double mu(const Dichotomy& d) {
    return (d.sigma().purity() - d.overlap()) / d.distance_sq();
}

HermitianOp omega(const Dichotomy& d) {
    const double m = mu(d);
    return m * d.rho().op() + (1.0 - m) * d.sigma().op();
}

double omega_purity(const Dichotomy& d) {
    const double ov = d.overlap();
    return (d.rho().purity() * d.sigma().purity() - ov * ov) / d.distance_sq();
}

HelstromMatrix helstrom_matrix(const Dichotomy& d, double lambda) {
    if (!std::isfinite(lambda)) throw DomainError("lambda must be finite");
    return {lambda, lambda * omega(d) - (d.rho().op() - d.sigma().op())};
}

double lambda_star(const Dichotomy& d) {
    const double dist = d.distance_sq();
    const double ov = d.overlap();
    const double denom = dist - d.rho().purity() * d.sigma().purity() + ov * ov;
    return dist / std::sqrt(denom);
}

double lambda_helstrom(const Dichotomy& d) {
    const double m = mu(d);
    const double denom = d.p0() - m * d.p0() + d.p1() * m;
    if (std::abs(denom) < 1e-12)
        throw DomainError("lambda_H is undefined: p0 - mu p0 + p1 mu = " + fmt(denom));
    return (d.p1() - d.p0()) / denom;
}

Povm povm_from_lambda(const Dichotomy& d, double lambda) {
    const HermitianOp h = helstrom_matrix(d, lambda).op;
    const double len = norm(h.vec);
    if (len <= 1e-15 * std::max(1.0, std::abs(h.scalar)))
        throw DomainError("H(lambda) is proportional to the identity");
    const auto [hi, lo] = h.eigenvalues();
    const double eps = 1e-12 * std::max(1.0, std::abs(h.scalar) + len);

    HermitianOp plus;
    if (hi < -eps) {
        plus = {0.0, {0.0, 0.0, 0.0}};
    } else if (lo > eps) {
        plus = HermitianOp::identity();
    } else {
        plus = {0.5, scaled(0.5 / len, h.vec)};
    }
    const Effect e{plus};
    return {e, e.complement()};
}

JointDist induced_joint(const Dichotomy& d, const Povm& m) {
    JointDist::Matrix p{};
    for (int x = 0; x < 2; ++x) {
        const double q = std::clamp(m.plus.probability(d.state(x)), 0.0, 1.0);
        p[x][0] = d.prior(x) * q;
        p[x][1] = d.prior(x) * (1.0 - q);
    }
    return JointDist(p);
}

JointDist induced_joint(const Dichotomy& d, double lambda) {
    return induced_joint(d, povm_from_lambda(d, lambda));
}

std::vector<LorenzPoint> lorenz_curve(const Dichotomy& d, int n) {
    if (n < 2) throw DomainError("Lorenz curve needs at least 2 points");
    const double ls = lambda_star(d);
    std::vector<LorenzPoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        // Symmetric about zero; endpoints and the midpoint are exact.
        const double l = ls * ((2.0 * i - (n - 1)) / (n - 1));
        const Effect e = povm_from_lambda(d, l).plus;
        out.push_back({l, e.probability(d.rho()), e.probability(d.sigma())});
    }
    return out;
}

}  // namespace accinfo
