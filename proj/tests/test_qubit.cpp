#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "accinfo/qubit.hpp"
#include "oracles.hpp"

using namespace accinfo;

namespace {

const QubitState kZero = QubitState::from_bloch({0, 0, 1});
const QubitState kOne = QubitState::from_bloch({0, 0, -1});
const QubitState kMixed = QubitState::from_bloch({0, 0, 0});

double max_abs_diff(const Matrix2& a, const Matrix2& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

/// Tr[A B] straight from complex matrices.
double hs(const Matrix2& a, const Matrix2& b) { return oracle::mat_trace(oracle::mat_mul(a, b)).real(); }

}  // namespace

TEST(QubitState, MatrixRoundTrip) {
    const auto s = QubitState::from_bloch({0.3, -0.4, 0.5});
    const Matrix2 m = s.matrix();
    EXPECT_NEAR(m[0].real(), 0.75, 1e-15);
    EXPECT_NEAR(m[1].real(), 0.15, 1e-15);
    EXPECT_NEAR(m[1].imag(), 0.2, 1e-15);
    EXPECT_NEAR(m[2].imag(), -0.2, 1e-15);
    const auto back = QubitState::from_matrix(m);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(back.bloch()[i], s.bloch()[i], 1e-15);
    EXPECT_NEAR(s.purity(), hs(m, m), 1e-15);
}

TEST(QubitState, Validation) {
    EXPECT_THROW(QubitState::from_bloch({1, 1, 0}), DomainError);
    using C = std::complex<double>;
    // Not Hermitian.
    EXPECT_THROW(QubitState::from_matrix({C(0.5), C(0.1), C(0.2), C(0.5)}), DomainError);
    // Trace 2.
    EXPECT_THROW(QubitState::from_matrix({C(1), C(0), C(0), C(1)}), DomainError);
    // Negative eigenvalue.
    EXPECT_THROW(QubitState::from_matrix({C(1.1), C(0), C(0), C(-0.1)}), DomainError);
    // Small anti-Hermitian noise is averaged away.
    const auto s = QubitState::from_matrix({C(0.5), C(0.5, 1e-12), C(0.5), C(0.5)});
    EXPECT_NEAR(s.bloch()[0], 1.0, 1e-11);
}

TEST(Dichotomy, RejectsEqualStatesAndBadPriors) {
    EXPECT_THROW(Dichotomy(kZero, kZero, 0.5), DomainError);
    EXPECT_THROW(Dichotomy(kZero, QubitState::from_bloch({0, 0, 1 - 1e-7}), 0.5), DomainError);
    EXPECT_THROW(Dichotomy(kZero, kOne, 0.7, 0.7), DomainError);
    EXPECT_THROW(Dichotomy(kZero, kOne, -0.1, 1.1), DomainError);
}

TEST(Mu, ClosedFormValues) {
    EXPECT_NEAR(mu(Dichotomy(kZero, kOne, 0.5)), 0.5, 1e-15);
    EXPECT_NEAR(mu(Dichotomy(kZero, kMixed, 0.5)), 0.0, 1e-15);
    std::mt19937_64 rng(41);
    for (int i = 0; i < 200; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        ASSERT_NEAR(mu(d.swapped()), 1.0 - mu(d), 1e-9);
    }
}

TEST(Omega, OrthogonalToDifferenceAndNonPure) {
    const HermitianOp w = omega(Dichotomy(kZero, kOne, 0.5));
    EXPECT_NEAR(w.scalar, 0.5, 1e-15);
    EXPECT_NEAR(norm(w.vec), 0.0, 1e-15);

    std::mt19937_64 rng(43);
    for (int i = 0; i < 1000; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const Matrix2 w_m = omega(d).matrix();
        Matrix2 diff;
        for (std::size_t k = 0; k < 4; ++k) diff[k] = d.rho().matrix()[k] - d.sigma().matrix()[k];
        ASSERT_LT(std::abs(hs(w_m, diff)), 1e-12);
        ASSERT_NEAR(oracle::mat_trace(w_m).real(), 1.0, 1e-12);
        ASSERT_NEAR(hs(w_m, w_m), omega_purity(d), 1e-12);
        ASSERT_LT(omega_purity(d), 1.0);
        ASSERT_GE(omega_purity(d), 0.5 - 1e-12);
    }
}

TEST(OmegaPurity, OrthogonalPairAndNearEqualLimit) {
    EXPECT_NEAR(omega_purity(Dichotomy(kZero, kOne, 0.5)), 0.5, 1e-15);
    const Vec3 base{0.3, 0.2, 0.4};
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        const Dichotomy d(QubitState::from_bloch(base),
                          QubitState::from_bloch({base[0] + eps, base[1], base[2] - eps}), 0.5);
        EXPECT_LT(omega_purity(d), 1.0) << eps;
    }
}

TEST(HelstromMatrix, TraceAndNorm) {
    const Dichotomy orth(kZero, kOne, 0.5);
    const HermitianOp h0 = helstrom_matrix(orth, 0.0).op;
    EXPECT_NEAR(h0.trace(), 0.0, 1e-15);
    EXPECT_NEAR(h0.vec[2], -1.0, 1e-15);

    std::mt19937_64 rng(47);
    for (int i = 0; i < 500; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const HermitianOp h = helstrom_matrix(d, 3.7).op;
        ASSERT_NEAR(oracle::mat_trace(h.matrix()).real(), 3.7, 1e-12);
        ASSERT_NEAR(h.trace_sq(), 3.7 * 3.7 * omega_purity(d) + d.distance_sq(), 1e-10);
    }
}

TEST(LambdaStar, OrthogonalPairAndSingularity) {
    EXPECT_NEAR(lambda_star(Dichotomy(kZero, kOne, 0.5)), 2.0, 1e-15);
    std::mt19937_64 rng(53);
    for (int i = 0; i < 500; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const double ls = lambda_star(d);
        ASSERT_GT(ls, 0.0);
        ASSERT_TRUE(std::isfinite(ls));
        ASSERT_LT(std::abs(oracle::mat_det(helstrom_matrix(d, ls).op.matrix())), 1e-10);
        ASSERT_LT(std::abs(oracle::mat_det(helstrom_matrix(d, -ls).op.matrix())), 1e-10);
    }
}

TEST(LambdaStar, VanishesAsStatesMerge) {
    const Vec3 r{0.5, 0.1, 0.2};
    double prev = 1e9;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        // Same purity, rotated slightly.
        const double c = std::cos(eps), s = std::sin(eps);
        const Vec3 t{c * r[0] - s * r[1], s * r[0] + c * r[1], r[2]};
        const double ls = lambda_star(Dichotomy(QubitState::from_bloch(r), QubitState::from_bloch(t), 0.5));
        EXPECT_LT(ls, prev);
        prev = ls;
    }
    EXPECT_LT(prev, 1e-3);
}

TEST(LambdaHelstrom, UniformPriorIsZero) {
    std::mt19937_64 rng(59);
    for (int i = 0; i < 100; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        ASSERT_EQ(lambda_helstrom(Dichotomy(d.rho(), d.sigma(), 0.5)), 0.0);
    }
}

TEST(LambdaHelstrom, TracelessPartParallelToHelstromMatrix) {
    std::mt19937_64 rng(61);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        double lh = 0.0;
        try {
            lh = lambda_helstrom(d);
        } catch (const DomainError&) {
            continue;
        }
        const HermitianOp h = helstrom_matrix(d, lh).op;
        const HermitianOp target = d.p0() * d.rho().op() - d.p1() * d.sigma().op();
        const Vec3 c = cross(h.vec, target.vec);
        ASSERT_LT(norm(c), 1e-10 * std::max(1.0, norm(h.vec) * norm(target.vec)));
        ++checked;
    }
    EXPECT_GT(checked, 900);
}

TEST(LambdaHelstrom, DegenerateDenominator) {
    // p0 - mu p0 + p1 mu = 0 with mu = 0 needs p0 = 0: rho pure, sigma maximally mixed.
    EXPECT_THROW(lambda_helstrom(Dichotomy(kZero, kMixed, 0.0, 1.0)), DomainError);
}

TEST(Povm, OrthogonalPairAtZero) {
    const Povm m = povm_from_lambda(Dichotomy(kZero, kOne, 0.5), 0.0);
    // H(0) = sigma - rho: the positive part is |1><1|.
    EXPECT_NEAR(m.plus.probability(kOne), 1.0, 1e-15);
    EXPECT_NEAR(m.plus.probability(kZero), 0.0, 1e-15);
    EXPECT_NEAR(m.minus.probability(kZero), 1.0, 1e-15);
}

TEST(Povm, ProjectorAlgebra) {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 500; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const double l = u(rng) * lambda_star(d);
        const Povm m = povm_from_lambda(d, l);
        const Matrix2 p = m.plus.matrix();
        const Matrix2 q = m.minus.matrix();
        const Matrix2 zero{};
        const Matrix2 id{1.0, 0.0, 0.0, 1.0};
        Matrix2 sum;
        for (std::size_t k = 0; k < 4; ++k) sum[k] = p[k] + q[k];
        ASSERT_LT(max_abs_diff(sum, id), 1e-15);
        ASSERT_LT(max_abs_diff(oracle::mat_mul(p, q), zero), 1e-12);
        ASSERT_LT(max_abs_diff(oracle::mat_mul(p, p), p), 1e-12);
    }
}

TEST(Povm, WindowStructure) {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 500; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const double ls = lambda_star(d);
        // Inside: one positive and one negative eigenvalue.
        const auto [hi, lo] = helstrom_matrix(d, 0.37 * ls).op.eigenvalues();
        ASSERT_GT(hi, 0.0);
        ASSERT_LT(lo, 0.0);
        // Outside: both eigenvalues share the sign of lambda, effects trivial.
        const auto out_pos = helstrom_matrix(d, 1.01 * ls).op.eigenvalues();
        ASSERT_GT(out_pos.second, 0.0);
        ASSERT_NEAR(povm_from_lambda(d, 1.01 * ls).plus.op.scalar, 1.0, 0.0);
        const auto out_neg = helstrom_matrix(d, -1.01 * ls).op.eigenvalues();
        ASSERT_LT(out_neg.first, 0.0);
        ASSERT_NEAR(povm_from_lambda(d, -1.01 * ls).plus.op.scalar, 0.0, 0.0);
        ASSERT_EQ(mutual_information(induced_joint(d, 5 * ls)), 0.0);
    }
}

TEST(Povm, WindowEdgesAreLimitsFromInside) {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 200; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const double ls = lambda_star(d);
        for (double edge : {-ls, ls}) {
            const Effect at = povm_from_lambda(d, edge).plus;
            const Effect near = povm_from_lambda(d, edge * (1 - 1e-9)).plus;
            // Rank one at the edge and continuous with the interior.
            ASSERT_NEAR(at.op.scalar, 0.5, 1e-15);
            ASSERT_NEAR(at.probability(d.rho()), near.probability(d.rho()), 1e-6);
            ASSERT_NEAR(at.probability(d.sigma()), near.probability(d.sigma()), 1e-6);
        }
    }
}

TEST(InducedJoint, BornRuleAndMarginals) {
    const JointDist j = induced_joint(Dichotomy(kZero, kOne, 0.5), 0.0);
    EXPECT_NEAR(j(0, 0), 0.0, 1e-15);
    EXPECT_NEAR(j(0, 1), 0.5, 1e-15);
    EXPECT_NEAR(j(1, 0), 0.5, 1e-15);
    EXPECT_NEAR(j(1, 1), 0.0, 1e-15);
    EXPECT_NEAR(mutual_information(j), 1.0, 1e-15);

    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        const double l = u(rng) * lambda_star(d);
        const JointDist p = induced_joint(d, l);
        ASSERT_NEAR(p.marginal_x()[0], d.p0(), 1e-12);
        const Matrix2 e = povm_from_lambda(d, l).plus.matrix();
        ASSERT_NEAR(p(0, 0), d.p0() * oracle::born(e, d.rho().matrix()), 1e-12);
        ASSERT_NEAR(p(1, 0), d.p1() * oracle::born(e, d.sigma().matrix()), 1e-12);

        // Swapping the labels swaps the rows.
        const JointDist q = induced_joint(d.swapped(), -l);
        ASSERT_NEAR(mutual_information(q), mutual_information(p), 1e-12);
    }
}

TEST(InducedJoint, NearEqualStatesCarryLittleInformation) {
    const Dichotomy d(QubitState::from_bloch({0.2, 0.1, 0.3}),
                      QubitState::from_bloch({0.2, 0.1, 0.3 + 1e-5}), 0.5);
    EXPECT_LT(mutual_information(induced_joint(d, 0.0)), 1e-9);
}

TEST(LorenzCurve, EndpointsAndRange) {
    EXPECT_THROW(lorenz_curve(Dichotomy(kZero, kOne, 0.5), 1), DomainError);
    std::mt19937_64 rng(83);
    const Dichotomy d = oracle::random_dichotomy(rng);
    const auto curve = lorenz_curve(d, 2);
    ASSERT_EQ(curve.size(), 2u);
    EXPECT_EQ(curve.front().lambda, -lambda_star(d));
    EXPECT_EQ(curve.back().lambda, lambda_star(d));
    for (const auto& pt : lorenz_curve(d, 257)) {
        ASSERT_GE(pt.q_rho, -1e-15);
        ASSERT_LE(pt.q_rho, 1 + 1e-15);
        ASSERT_GE(pt.q_sigma, -1e-15);
        ASSERT_LE(pt.q_sigma, 1 + 1e-15);
    }
}

TEST(LorenzCurve, HelstromPointMaximizesTheGap) {
    std::mt19937_64 rng(89);
    for (int i = 0; i < 50; ++i) {
        const Dichotomy d0 = oracle::random_dichotomy(rng);
        const Dichotomy d(d0.rho(), d0.sigma(), 0.5);
        const auto curve = lorenz_curve(d, 2001);  // odd: lambda_H = 0 is sampled
        const auto& mid = curve[1000];
        ASSERT_EQ(mid.lambda, lambda_helstrom(d));
        // Pi_+ favours sigma at lambda_H, so its complement maximizes
        // Tr[E rho] - Tr[E sigma] over the curve.
        for (const auto& pt : curve) ASSERT_LE(pt.q_sigma - pt.q_rho, mid.q_sigma - mid.q_rho + 1e-12);
        // Equal to the trace distance.
        ASSERT_NEAR(mid.q_sigma - mid.q_rho, 0.5 * norm({d.rho().bloch()[0] - d.sigma().bloch()[0],
                                                         d.rho().bloch()[1] - d.sigma().bloch()[1],
                                                         d.rho().bloch()[2] - d.sigma().bloch()[2]}),
                    1e-12);
    }
}

namespace {

using Pt = std::pair<double, double>;

double cross2(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

/// Counter-clockwise convex hull (monotone chain).
std::vector<Pt> convex_hull(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<Pt> h(2 * pts.size());
    std::size_t k = 0;
    for (const Pt& p : pts) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i - 1]) <= 0) --k;
        h[k++] = pts[i - 1];
    }
    h.resize(k - 1);
    return h;
}

/// Largest distance by which q lies outside the hull (<= 0 inside).
double outside_by(const std::vector<Pt>& hull, const Pt& q) {
    double worst = -1.0;
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        const double len = std::hypot(b.first - a.first, b.second - a.second);
        worst = std::max(worst, -cross2(a, b, q) / len);
    }
    return worst;
}

}  // namespace

TEST(LorenzCurve, RandomEffectsStayInsideTheHull) {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 3; ++trial) {
        const Dichotomy d = oracle::random_dichotomy(rng);
        std::vector<Pt> pts{{0.0, 0.0}, {1.0, 1.0}};
        for (const auto& pt : lorenz_curve(d, 1001)) {
            pts.emplace_back(pt.q_rho, pt.q_sigma);
            pts.emplace_back(1.0 - pt.q_rho, 1.0 - pt.q_sigma);
        }
        const auto hull = convex_hull(pts);
        double worst = -1.0;
        for (int i = 0; i < 10000; ++i) {
            // 0 <= E <= 1: scalar s and |v| <= min(s, 1 - s); every fourth
            // sample is a projector, which is where the boundary lives.
            const double s = i % 4 == 0 ? 0.5 : u(rng);
            const double len = (i % 4 == 0 ? 1.0 : u(rng)) * std::min(s, 1.0 - s);
            const Vec3 n = oracle::random_unit(rng);
            const HermitianOp e{s, {len * n[0], len * n[1], len * n[2]}};
            const Matrix2 m = e.matrix();
            worst = std::max(worst, outside_by(hull, {oracle::born(m, d.rho().matrix()),
                                                      oracle::born(m, d.sigma().matrix())}));
        }
        EXPECT_LT(worst, 1e-6) << "trial " << trial;
    }
}
