#pragma once

// Qubit states, dichotomies and the Helstrom family
//
//   H(l) = l * omega - (rho - sigma),   omega = mu rho + (1 - mu) sigma,
//
// where omega is the affine combination of rho and sigma that is
// Hilbert-Schmidt orthogonal to rho - sigma. Two-outcome measurements built
// from the spectral projectors of H(l) with -l* <= l <= l* are exactly the
// ones reaching the boundary of the testing region.
//
// Operators are 2x2 Hermitian and stored in the Pauli basis,
// A = s * 1 + v . (X, Y, Z), so that Tr A = 2 s and Tr AB = 2 (s t + v . w).
// Eigenvalues are s +- |v|, with eigenprojectors (1 +- v.sigma/|v|) / 2.

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "accinfo/binary_dist.hpp"

namespace accinfo {

using Vec3 = std::array<double, 3>;
/// Row-major 2x2 complex matrix.
using Matrix2 = std::array<std::complex<double>, 4>;

inline constexpr double kDichotomyTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;

double dot(const Vec3& u, const Vec3& v);
double norm(const Vec3& v);
Vec3 cross(const Vec3& u, const Vec3& v);

/// Hermitian 2x2 operator scalar * 1 + vec . sigma.
struct HermitianOp {
    double scalar = 0.0;
    Vec3 vec{0.0, 0.0, 0.0};

    double trace() const { return 2.0 * scalar; }
    /// Hilbert-Schmidt purity Tr A^2.
    double trace_sq() const { return 2.0 * (scalar * scalar + dot(vec, vec)); }
    double det() const { return scalar * scalar - dot(vec, vec); }
    /// Larger and smaller eigenvalue.
    std::pair<double, double> eigenvalues() const;
    Matrix2 matrix() const;

    static HermitianOp identity() { return {1.0, {0.0, 0.0, 0.0}}; }
    /// Hermitian part (A + A^dagger) / 2 of an arbitrary 2x2 matrix.
    static HermitianOp from_matrix(const Matrix2& m);

    friend HermitianOp operator+(const HermitianOp& a, const HermitianOp& b);
    friend HermitianOp operator-(const HermitianOp& a, const HermitianOp& b);
    friend HermitianOp operator*(double k, const HermitianOp& a);
};

/// Tr[A B].
double trace_product(const HermitianOp& a, const HermitianOp& b);

/// Qubit density matrix (1 + r . sigma) / 2 with |r| <= 1.
class QubitState {
public:
    QubitState() = default;

    static QubitState from_bloch(const Vec3& r);
    /// Validates Hermiticity (1e-10), unit trace and positivity, then stores
    /// the Bloch vector of the Hermitized matrix.
    static QubitState from_matrix(const Matrix2& m);

    const Vec3& bloch() const { return r_; }
    HermitianOp op() const { return {0.5, {0.5 * r_[0], 0.5 * r_[1], 0.5 * r_[2]}}; }
    Matrix2 matrix() const { return op().matrix(); }
    /// Tr rho^2 = (1 + |r|^2) / 2.
    double purity() const { return 0.5 * (1.0 + dot(r_, r_)); }

private:
    explicit QubitState(const Vec3& r) : r_(r) {}
    Vec3 r_{0.0, 0.0, 0.0};
};

/// Two distinct qubit states with prior probabilities (p0, p1).
class Dichotomy {
public:
    /// Throws DomainError if Tr(rho - sigma)^2 <= 1e-12 or the prior is not a
    /// probability vector.
    Dichotomy(const QubitState& rho, const QubitState& sigma, double p0, double p1);
    Dichotomy(const QubitState& rho, const QubitState& sigma, double p0)
        : Dichotomy(rho, sigma, p0, 1.0 - p0) {}

    const QubitState& rho() const { return rho_; }
    const QubitState& sigma() const { return sigma_; }
    double p0() const { return p0_; }
    double p1() const { return p1_; }
    const QubitState& state(int x) const { return x == 0 ? rho_ : sigma_; }
    double prior(int x) const { return x == 0 ? p0_ : p1_; }

    /// Same pair with (rho, p0) and (sigma, p1) exchanged.
    Dichotomy swapped() const { return Dichotomy(sigma_, rho_, p1_, p0_); }

    /// Tr(rho - sigma)^2.
    double distance_sq() const;
    double overlap() const;  ///< Tr rho sigma

private:
    QubitState rho_;
    QubitState sigma_;
    double p0_;
    double p1_;
};

/// A two-outcome measurement element, 0 <= E <= 1.
struct Effect {
    HermitianOp op;

    Matrix2 matrix() const { return op.matrix(); }
    /// Born-rule probability Tr[E rho].
    double probability(const QubitState& s) const { return trace_product(op, s.op()); }
    Effect complement() const { return {HermitianOp::identity() - op}; }
};

struct HelstromMatrix {
    double lambda = 0.0;
    HermitianOp op;
};

struct Povm {
    Effect plus;   ///< projector on the nonnegative part of H, outcome y = 0
    Effect minus;  ///< projector on the negative part of H, outcome y = 1
};

struct LorenzPoint {
    double lambda = 0.0;
    double q_rho = 0.0;    ///< Tr[Pi_+ rho]
    double q_sigma = 0.0;  ///< Tr[Pi_+ sigma]
};

/// mu = (Tr sigma^2 - Tr rho sigma) / Tr(rho - sigma)^2.
double mu(const Dichotomy& d);
/// omega = mu rho + (1 - mu) sigma, a unit-trace non-pure state for qubits.
HermitianOp omega(const Dichotomy& d);
/// Closed form (Tr rho^2 Tr sigma^2 - (Tr rho sigma)^2) / Tr(rho - sigma)^2.
double omega_purity(const Dichotomy& d);

HelstromMatrix helstrom_matrix(const Dichotomy& d, double lambda);

/// Half-width of the extremality window,
/// Tr(rho-sigma)^2 / sqrt(Tr(rho-sigma)^2 - Tr rho^2 Tr sigma^2 + (Tr rho sigma)^2).
double lambda_star(const Dichotomy& d);

/// The l for which H(l) is proportional, up to the identity component, to the
/// Helstrom matrix p0 rho - p1 sigma. Throws DomainError when the denominator
/// p0 - mu p0 + p1 mu vanishes.
double lambda_helstrom(const Dichotomy& d);

/// Spectral projectors of H(lambda). Eigenvalues within 1e-12 (relative) of
/// zero are treated as zero; while one eigenvalue is <= 0 and the other >= 0
/// the split is rank one, so at l = +-l* the projectors are the limits from
/// inside the window. Outside the window Pi_+ is 0 or the identity.
/// Throws DomainError if H(lambda) is proportional to the identity.
Povm povm_from_lambda(const Dichotomy& d, double lambda);

/// p(x, y) = prior_x Tr[Pi_y state_x] with y = 0 for Pi_+.
JointDist induced_joint(const Dichotomy& d, double lambda);
JointDist induced_joint(const Dichotomy& d, const Povm& m);

/// n points, uniform in lambda over [-l*, l*] including both endpoints.
std::vector<LorenzPoint> lorenz_curve(const Dichotomy& d, int n);

}  // namespace accinfo
